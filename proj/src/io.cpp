#include "ipf/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace ipf::io {

json document(const std::string& kind, json payload) {
  json doc = {{"schema_version", kSchemaVersion}, {"kind", kind}};
  doc.update(payload);
  return doc;
}

json to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(Vector(m.row(i).transpose())));
  return rows;
}

Vector vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw InputError("matrix_from_json: expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Vector row = vector_from_json(j.at(i));
    if (row.size() != cols) throw InputError("matrix_from_json: ragged rows");
    m.row(i) = row.transpose();
  }
  return m;
}

namespace {

json series(const std::vector<Matrix>& s) {
  json out = json::array();
  for (const auto& m : s) out.push_back(to_json(m));
  return out;
}

std::vector<Matrix> series_from_json(const json& j) {
  std::vector<Matrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

json complex_vector(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({{"re", v(i).real()}, {"im", v(i).imag()}});
  return out;
}

}  // namespace

json to_json(const EnsembleStats& stats) {
  json mean = json::array();
  for (const auto& m : stats.mean) mean.push_back(to_json(m));
  json j = {{"n_paths", stats.n_paths}, {"seed", stats.seed}, {"dim", stats.dim()},
            {"grid", stats.grid},      {"mean", mean},       {"r", series(stats.r)},
            {"r_stderr", series(stats.r_stderr)}, {"r_dot", series(stats.r_dot)},
            {"b", series(stats.b)}};
  if (!stats.paths.empty()) {
    json paths = json::array();
    for (const auto& path : stats.paths) {
      json p = json::array();
      for (const auto& x : path) p.push_back(to_json(x));
      paths.push_back(p);
    }
    j["paths"] = paths;
  }
  return j;
}

EnsembleStats stats_from_json(const json& j) {
  EnsembleStats s;
  s.n_paths = j.at("n_paths").get<std::int64_t>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.grid = j.at("grid").get<std::vector<double>>();
  for (const auto& m : j.at("mean")) s.mean.push_back(vector_from_json(m));
  s.r = series_from_json(j.at("r"));
  s.r_stderr = series_from_json(j.value("r_stderr", json::array()));
  s.r_dot = series_from_json(j.value("r_dot", json::array()));
  s.b = series_from_json(j.at("b"));
  if (s.r.size() != s.grid.size() || s.mean.size() != s.grid.size()) {
    throw InputError("stats_from_json: series lengths differ from the grid");
  }
  return s;
}

std::string to_csv(const EnsembleStats& stats) {
  const int n = stats.dim();
  const bool with_rdot = stats.r_dot.size() == stats.grid.size();
  std::ostringstream os;
  os << std::setprecision(17);
  os << "t";
  for (int i = 0; i < n; ++i) os << ",mean_" << i;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) os << ",r_" << i << k;
  if (with_rdot) {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) os << ",rdot_" << i << k;
  }
  os << '\n';
  for (std::size_t t = 0; t < stats.grid.size(); ++t) {
    os << stats.grid[t];
    for (int i = 0; i < n; ++i) os << ',' << stats.mean[t](i);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) os << ',' << stats.r[t](i, k);
    if (with_rdot) {
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) os << ',' << stats.r_dot[t](i, k);
    }
    os << '\n';
  }
  return os.str();
}

json to_json(const EntropyEstimate& e) {
  json j = {{"value", e.value}, {"method", to_string(e.method)}, {"s", e.s}, {"T", e.T}};
  j["std_error"] = e.std_error ? json(*e.std_error) : json(nullptr);
  return j;
}

json to_json(const IdentifiedOperator& op) {
  return {{"tau", op.tau},
          {"method", to_string(op.method)},
          {"A", to_json(op.A)},
          {"eigenvalues", complex_vector(op.eigenvalues)},
          {"diagnostics", op.diagnostics},
          {"notes", op.notes}};
}

json to_json(const EigenChain& chain) {
  json lambdas = json::array();
  for (const auto& l : chain.lambdas) lambdas.push_back(to_json(l));
  return {{"n", chain.n},
          {"lambdas", lambdas},
          {"intervals", chain.intervals},
          {"switch_moments", chain.switch_moments()},
          {"terminal", chain.terminal},
          {"horizon", chain.horizon()}};
}

json to_json(const SegmentSchedule& schedule) {
  json segments = json::array();
  for (const auto& s : schedule.segments) {
    segments.push_back({{"start", s.start},
                        {"end", s.end},
                        {"eigenvalues", to_json(s.eigenvalues)},
                        {"start_state", to_json(s.start_state)},
                        {"control", to_json(s.control)}});
  }
  json needles = json::array();
  for (const auto& ev : schedule.needle_events) {
    needles.push_back({{"tau", ev.tau},
                       {"v_minus", to_json(ev.v_minus)},
                       {"v_plus", to_json(ev.v_plus)},
                       {"delta_v", to_json(ev.delta_v)}});
  }
  return {{"dps", schedule.dps}, {"segments", segments}, {"needle_events", needles}};
}

SegmentSchedule schedule_from_json(const json& j) {
  SegmentSchedule s;
  s.dps = j.at("dps").get<std::vector<double>>();
  for (const auto& seg : j.at("segments")) {
    s.segments.push_back({seg.at("start").get<double>(), seg.at("end").get<double>(),
                          vector_from_json(seg.at("eigenvalues")), vector_from_json(seg.at("start_state")),
                          vector_from_json(seg.at("control"))});
  }
  for (const auto& ev : j.at("needle_events")) {
    s.needle_events.push_back({ev.at("tau").get<double>(), vector_from_json(ev.at("v_minus")),
                               vector_from_json(ev.at("v_plus")), vector_from_json(ev.at("delta_v"))});
  }
  return s;
}

json to_json(const GammaRatios& g) {
  return {{"converged", g.converged},
          {"gamma1", g.gamma1},
          {"gamma2", g.gamma2},
          {"residuals", {g.residual1, g.residual2}},
          {"reference_point", {3.896, 2.19}},
          {"reference_residuals", {g.reference_residual1, g.reference_residual2}},
          {"message", g.message}};
}

json to_json(const InvariantSet& inv) {
  json prov = json::object();
  for (const auto& [k, v] : inv.provenance) prov[k] = to_string(v);
  return {{"gamma", inv.gamma},         {"ao", inv.ao},
          {"ao_abs", inv.ao_abs},       {"a", inv.a},
          {"a_formula", inv.a_formula}, {"bo", inv.bo},
          {"b", inv.b},                 {"delta_star", inv.delta_star},
          {"defect", inv.defect},       {"provenance", prov}};
}

json to_json(const TripletReport& rep) {
  return {{"gamma", rep.gamma},
          {"ao_abs", rep.ao_abs},
          {"a", rep.a},
          {"delta_star", rep.delta_star},
          {"gamma13", rep.gamma13},
          {"gamma23", rep.gamma23},
          {"contributions",
           {{"control13", rep.contribution13},
            {"control23", rep.contribution23},
            {"consumed13", rep.consumed13},
            {"consumed23", rep.consumed23}}},
          {"doublet_closure", rep.doublet_closure},
          {"doublet_residual", rep.doublet_residual},
          {"total_nats", rep.total_nats},
          {"total_bits", rep.total_bits},
          {"node_transfer_nats", rep.node_transfer_nats},
          {"node_bits", rep.node_bits},
          {"ratios", to_json(rep.ratios)}};
}

json to_json(const InfoNetwork& net) {
  // nodes nest: each node holds the next level as its child
  json child = nullptr;
  for (auto it = net.nodes.rbegin(); it != net.nodes.rend(); ++it) {
    json node = {{"level", it->level},
                 {"members", it->members},
                 {"member_eigenvalues", it->member_eigenvalues},
                 {"alpha3", it->alpha3},
                 {"cooperation_time", it->cooperation_time},
                 {"info_nats", it->info_nats},
                 {"info_bits", it->info_bits},
                 {"carries_leftover", it->carries_leftover},
                 {"child", child}};
    child = std::move(node);
  }
  return {{"n", net.n},
          {"gamma", net.gamma},
          {"alpha1", net.alpha1},
          {"spectrum", to_json(net.spectrum)},
          {"root", child},
          {"code", net.code},
          {"bit_mapping", {{std::string(1, kRegularLetter), 0}, {std::string(1, kNeedleLetter), 1}}},
          {"totals", {{"total_nats", net.total_nats}, {"total_bits", net.total_bits}, {"node_count", net.node_count()}}},
          {"warnings", net.warnings}};
}

json to_json(const DiagnosticsReport& rep) {
  json segments = json::array();
  for (const auto& s : rep.segments) {
    segments.push_back({{"start", s.start},
                        {"end", s.end},
                        {"lce", to_json(s.lce)},
                        {"classification", to_string(s.classification)}});
  }
  json flips = json::array();
  for (const auto& f : rep.sign_flips) {
    flips.push_back({{"tau", f.tau},
                     {"needle", f.needle},
                     {"lce_before", to_json(f.lce_before)},
                     {"lce_after", to_json(f.lce_after)},
                     {"flipped", f.flipped},
                     {"pfr", f.pfr},
                     {"positive_sum", f.positive_sum}});
  }
  return {{"segments", segments}, {"sign_flips", flips}, {"warnings", rep.warnings}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw InputError("failed writing " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace ipf::io
