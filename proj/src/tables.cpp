#include "rkhs/tables.hpp"

#include "rkhs/errors.hpp"

#include <future>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace rkhs {
namespace {

using Values = std::vector<double>;

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

// Canonical text of a configuration, used to share runs between cells.
std::string run_key(const std::string& id, const CaseParameters& p) {
  std::ostringstream os;
  os << std::setprecision(17) << id << '|' << p.m << '|';
  for (int c : p.counts) os << c << 'x';
  os << '|' << p.dt << '|' << p.t_final << '|' << p.nu << '|' << p.sigma << '|' << p.reorthogonalize;
  return os.str();
}

TableRow row(std::string label, std::vector<TableCell> cells) { return {std::move(label), std::move(cells)}; }

std::vector<TableSpec> build_tables() {
  std::vector<TableSpec> out;

  {
    TableSpec t{"table1", "ex1 maximum absolute error", {"N=10", "N=25", "N=50", "N=100"}, {}};
    const std::vector<int> ns{10, 25, 50, 100};
    const std::map<int, Values> published{{3, {9.36088e-5, 7.80543e-6, 9.09414e-7, 1.40113e-7}},
                                      {5, {1.64341e-6, 1.96221e-8, 6.34336e-10, 2.00868e-11}}};
    for (const auto& [m, vals] : published) {
      std::vector<TableCell> cells;
      for (std::size_t j = 0; j < ns.size(); ++j)
        cells.push_back({"ex1", {.m = m, .n = ns[j]}, Metric::linf, vals[j]});
      t.rows.push_back(row("m=" + std::to_string(m), cells));
    }
    out.push_back(std::move(t));
  }

  auto ex2_table = [](std::string id, std::vector<int> ns, std::map<int, Values> published) {
    TableSpec t{std::move(id), "ex2 maximum absolute error", {}, {}};
    for (int n : ns) t.columns.push_back("N=" + std::to_string(n));
    for (const auto& [m, vals] : published) {
      std::vector<TableCell> cells;
      for (std::size_t j = 0; j < ns.size(); ++j)
        cells.push_back({"ex2", {.m = m, .n = ns[j]}, Metric::linf, vals[j]});
      t.rows.push_back(row("m=" + std::to_string(m), cells));
    }
    return t;
  };
  out.push_back(ex2_table("table2", {13, 26, 52},
                          {{6, {4.14718e-6, 3.29059e-7, 4.60087e-8}},
                           {8, {3.1921e-8, 9.14844e-10, 3.37252e-11}}}));
  out.push_back(ex2_table("table3", {10, 20, 40},
                          {{6, {4.06488e-6, 6.75653e-7, 9.77376e-8}},
                           {8, {6.46414e-8, 3.078e-9, 1.19146e-10}}}));

  auto ex3_table = [](std::string id, double nu, std::vector<Values> published) {
    TableSpec t{std::move(id), "ex3 maximum absolute error, nu=" + fmt(nu) + ", sigma=100, dt=0.01, T=1",
                {"m=3", "m=5"}, {}};
    const std::vector<int> ns{10, 20, 40};
    for (std::size_t i = 0; i < ns.size(); ++i) {
      std::vector<TableCell> cells;
      for (int j = 0; j < 2; ++j)
        cells.push_back({"ex3",
                         {.m = j == 0 ? 3 : 5, .n = ns[i], .dt = 0.01, .t_final = 1.0, .nu = nu, .sigma = 100.0},
                         Metric::linf,
                         published[i][static_cast<std::size_t>(j)]});
      t.rows.push_back(row("N=" + std::to_string(ns[i]), cells));
    }
    return t;
  };
  out.push_back(ex3_table("table4", 0.005,
                          {{2.18427e-7, 1.00476e-8}, {5.0701e-8, 7.34209e-10}, {8.45243e-9, 3.28094e-11}}));
  out.push_back(ex3_table("table5", 0.01,
                          {{5.70664e-7, 2.81404e-8}, {1.11397e-7, 1.61939e-9}, {1.71283e-8, 6.57035e-11}}));

  {
    TableSpec t{"table6", "ex4 maximum absolute error, nu=0.005", {"m=3", "m=5"}, {}};
    struct Line { int n; double dt, t; Values published; };
    const std::vector<Line> lines{{50, 0.004, 2.4, {3.11061e-5, 5.00091e-6}},
                                  {100, 0.001, 2.4, {4.35295e-5, 8.59652e-7}},
                                  {50, 0.01, 2.4, {4.24253e-5, 3.20613e-5}},
                                  {50, 0.01, 1.8, {9.79958e-5, 6.82184e-5}}};
    for (const auto& l : lines) {
      std::vector<TableCell> cells;
      for (int j = 0; j < 2; ++j)
        cells.push_back({"ex4", {.m = j == 0 ? 3 : 5, .n = l.n, .dt = l.dt, .t_final = l.t, .nu = 0.005},
                         Metric::linf, l.published[static_cast<std::size_t>(j)]});
      t.rows.push_back(row("N=" + std::to_string(l.n) + " dt=" + fmt(l.dt) + " T=" + fmt(l.t), cells));
    }
    out.push_back(std::move(t));
  }

  struct FrontLine { double dt, t, nu; double linf, l2; };
  auto front_table = [](std::string id, std::string case_id, std::vector<FrontLine> lines) {
    TableSpec t{std::move(id), case_id + " errors, N=25, m=5", {"Linf", "L2"}, {}};
    for (const auto& l : lines) {
      const ParameterOverrides o{.m = 5, .n = 25, .dt = l.dt, .t_final = l.t, .nu = l.nu};
      t.rows.push_back(row("dt=" + fmt(l.dt) + " T=" + fmt(l.t) + " nu=" + fmt(l.nu),
                           {{case_id, o, Metric::linf, l.linf}, {case_id, o, Metric::rel_l2, l.l2}}));
    }
    return t;
  };
  out.push_back(front_table("table7", "ex5",
                            {{0.005, 1, 1, 4.25623e-9, 5.65924e-9},
                             {0.001, 1, 1, 4.09451e-9, 5.183e-9},
                             {0.005, 10, 1, 1.30473e-10, 8.08799e-11},
                             {0.001, 10, 1, 3.05613e-11, 2.10146e-11},
                             {0.005, 1, 0.1, 2.53845e-3, 2.572e-3},
                             {0.001, 1, 0.1, 2.83507e-3, 2.35878e-3},
                             {0.005, 10, 0.1, 8.43362e-20, 3.299e-20},
                             {0.001, 10, 0.1, 3.0511e-20, 1.58742e-20}}));
  out.push_back(front_table("table7b", "ex6",
                            {{0.005, 1, 1, 6.68948e-6, 3.63904e-6},
                             {0.001, 1, 1, 1.62154e-6, 9.35968e-7},
                             {0.005, 10, 1, 7.56945e-9, 3.26121e-9},
                             {0.001, 10, 1, 1.52521e-9, 6.61975e-10},
                             {0.005, 1, 0.1, 2.74444e-2, 7.36095e-3},
                             {0.001, 1, 0.1, 2.52867e-2, 6.71424e-3},
                             {0.005, 5, 0.1, 6.66134e-16, 1.5666e-16},
                             {0.001, 5, 0.1, 1.77636e-15, 4.13425e-16}}));

  {
    TableSpec t{"table8", "ex7 relative L2 error", {"N=27", "N=64", "N=125"}, {}};
    struct Line { double t, dt; int m; Values published; };
    const std::vector<Line> lines{{1, 0.01, 3, {1.68375e-3, 9.3954e-4, 5.77729e-4}},
                                  {1, 0.01, 5, {4.19018e-4, 1.72518e-4, 8.92225e-5}},
                                  {1, 0.001, 3, {1.65172e-3, 9.1161e-4, 5.5239e-4}},
                                  {1, 0.001, 5, {3.93504e-4, 1.41514e-4, 6.18902e-5}},
                                  {5, 0.01, 3, {3.10668e-2, 1.51374e-2, 8.47024e-3}},
                                  {5, 0.01, 5, {7.69788e-3, 2.78871e-3, 1.31209e-3}},
                                  {5, 0.001, 3, {3.04834e-2, 1.46877e-2, 8.09662e-3}},
                                  {5, 0.001, 5, {7.22393e-3, 2.28496e-3, 9.06803e-4}}};
    const std::vector<int> ns{27, 64, 125};
    for (const auto& l : lines) {
      std::vector<TableCell> cells;
      for (std::size_t j = 0; j < ns.size(); ++j)
        cells.push_back({"ex7", {.m = l.m, .n = ns[j], .dt = l.dt, .t_final = l.t}, Metric::rel_l2, l.published[j]});
      t.rows.push_back(row("T=" + fmt(l.t) + " dt=" + fmt(l.dt) + " m=" + std::to_string(l.m), cells));
    }
    out.push_back(std::move(t));
  }

  {
    TableSpec t{"table9", "ex7 at T=1, N=150 (5x5x6 grid)", {"m=3 Linf", "m=3 rms", "m=5 Linf", "m=5 rms"}, {}};
    struct Line { double dt; Values published; };
    const std::vector<Line> lines{{0.01, {1.87124e-3, 8.1899e-4, 2.56833e-4, 1.27696e-4}},
                                  {0.001, {1.83218e-3, 7.79576e-4, 2.09345e-4, 8.43759e-5}},
                                  {0.0001, {1.82829e-3, 7.75725e-4, 2.04977e-4, 8.06016e-5}}};
    for (const auto& l : lines) {
      std::vector<TableCell> cells;
      for (int j = 0; j < 4; ++j) {
        const int m = j < 2 ? 3 : 5;
        cells.push_back({"ex7", {.m = m, .n = 150, .dt = l.dt, .t_final = 1.0},
                         j % 2 == 0 ? Metric::linf : Metric::rms, l.published[static_cast<std::size_t>(j)]});
      }
      t.rows.push_back(row("dt=" + fmt(l.dt), cells));
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::linf: return "linf";
    case Metric::rel_l2: return "rel_l2";
    case Metric::rms: return "rms";
  }
  return "?";
}

double metric_value(const ErrorMetrics& e, Metric m) {
  switch (m) {
    case Metric::linf: return e.linf;
    case Metric::rel_l2: return e.rel_l2;
    case Metric::rms: return e.rms;
  }
  return 0.0;
}

const std::vector<TableSpec>& list_tables() {
  static const std::vector<TableSpec> tables = build_tables();
  return tables;
}

const TableSpec& find_table(const std::string& id) {
  for (const auto& t : list_tables())
    if (t.id == id) return t;
  std::string known;
  for (const auto& t : list_tables()) known += (known.empty() ? "" : ", ") + t.id;
  throw InvalidArgument("unknown table '" + id + "' (expected one of " + known + ")");
}

TableResult compute_table(const TableSpec& spec, unsigned threads) {
  // Distinct configurations in first-seen order.
  std::map<std::string, std::size_t> index;
  std::vector<const TableCell*> jobs;
  std::vector<std::vector<std::size_t>> cell_job(spec.rows.size());
  for (std::size_t i = 0; i < spec.rows.size(); ++i)
    for (const auto& cell : spec.rows[i].cells) {
      const auto key = run_key(cell.case_id, apply_overrides(find_case(cell.case_id), cell.overrides));
      auto [it, fresh] = index.emplace(key, jobs.size());
      if (fresh) jobs.push_back(&cell);
      cell_job[i].push_back(it->second);
    }

  std::vector<ErrorMetrics> results(jobs.size());
  const std::size_t width = std::max(1u, threads);
  for (std::size_t begin = 0; begin < jobs.size(); begin += width) {
    std::vector<std::future<ErrorMetrics>> batch;
    const std::size_t end = std::min(jobs.size(), begin + width);
    for (std::size_t j = begin; j < end; ++j)
      batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, [cell = jobs[j]] {
        return run_case(cell->case_id, cell->overrides).errors;
      }));
    for (std::size_t j = begin; j < end; ++j) results[j] = batch[j - begin].get();
  }

  TableResult out{&spec, {}};
  for (std::size_t i = 0; i < spec.rows.size(); ++i) {
    Values vals;
    for (std::size_t j = 0; j < spec.rows[i].cells.size(); ++j)
      vals.push_back(metric_value(results[cell_job[i][j]], spec.rows[i].cells[j].metric));
    out.values.push_back(std::move(vals));
  }
  return out;
}

void write_table_csv(std::ostream& out, const TableResult& result) {
  const TableSpec& spec = *result.spec;
  out << "row";
  for (const auto& c : spec.columns) out << ',' << c << ',' << c << " published";
  out << '\n';
  for (std::size_t i = 0; i < spec.rows.size(); ++i) {
    out << spec.rows[i].label;
    for (std::size_t j = 0; j < spec.columns.size(); ++j) {
      const auto& published = spec.rows[i].cells[j].published;
      out << ',' << fmt(result.values[i][j]) << ',' << (published ? fmt(*published) : "");
    }
    out << '\n';
  }
}

nlohmann::json table_to_json(const TableResult& result) {
  const TableSpec& spec = *result.spec;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < spec.rows.size(); ++i) {
    nlohmann::json cells = nlohmann::json::array();
    for (std::size_t j = 0; j < spec.columns.size(); ++j) {
      const auto& cell = spec.rows[i].cells[j];
      nlohmann::json c = {{"column", spec.columns[j]},
                          {"case", cell.case_id},
                          {"metric", metric_name(cell.metric)},
                          {"value", result.values[i][j]}};
      if (cell.published) c["published"] = *cell.published;
      cells.push_back(std::move(c));
    }
    rows.push_back({{"row", spec.rows[i].label}, {"cells", std::move(cells)}});
  }
  return {{"table", spec.id}, {"title", spec.title}, {"rows", std::move(rows)}};
}

}  // namespace rkhs
