#include "ipf/network.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "ipf/eigenchain.hpp"

namespace ipf {

double consumed_information(double delivered) { return eigen_step(-delivered, 1.0); }

TripletReport triplet_accounting(const InvariantSet& inv) {
  if (!(inv.ao_abs > 0.0) || !std::isfinite(inv.a) || !std::isfinite(inv.delta_star)) {
    throw InputError("triplet_accounting: invariant set is incomplete");
  }
  TripletReport rep;
  rep.gamma = inv.gamma;
  rep.ao_abs = inv.ao_abs;
  rep.a = inv.a;
  rep.delta_star = inv.delta_star;

  const TripletTiming timing = triplet_timing(inv.a);
  rep.ratios = timing.ratios;
  rep.gamma13 = timing.gamma13;
  rep.gamma23 = timing.gamma23;
  rep.contribution13 = inv.a * (rep.gamma13 - 1.0);
  rep.contribution23 = inv.a * (rep.gamma23 - 1.0);
  rep.consumed13 = consumed_information(rep.contribution13);
  rep.consumed23 = consumed_information(rep.contribution23);

  const double ao2 = inv.ao_abs * inv.ao_abs;
  const double defect = inv.delta_star * ao2;
  rep.doublet_closure = rep.consumed13 + rep.consumed23 + 2.0 * defect;
  rep.doublet_residual = rep.doublet_closure - ao2;
  rep.total_nats = 4.0 * ao2 + 3.0 * inv.a;
  rep.total_bits = rep.total_nats / kLn2;
  rep.node_transfer_nats = ao2 + inv.a - defect;
  rep.node_bits = rep.node_transfer_nats / kLn2;
  return rep;
}

InfoNetwork build_in(int n, double gamma, double alpha1) {
  if (n < 0) throw InputError("build_in: n must be >= 0");
  if (!(gamma >= kGammaMin && gamma <= kGammaMax)) {
    throw DomainError("build_in: gamma outside the admissible range [0.00718, 0.8]");
  }
  if (!(alpha1 > 0.0) || !std::isfinite(alpha1)) throw InputError("build_in: alpha1 must be positive");

  InfoNetwork net;
  net.n = n;
  net.gamma = gamma;
  net.alpha1 = alpha1;
  if (n < 3) {
    if (n >= 1) net.spectrum = optimal_spectrum(n, alpha1);
    net.warnings.push_back("fewer than three modes: no cooperation, empty network");
    return net;
  }
  net.spectrum = optimal_spectrum(n, alpha1);

  const InvariantSet inv = make_invariant_set(gamma);
  const TripletReport rep = triplet_accounting(inv);
  const auto joined = [&](double alpha_j0) { return 3.0 * inv.a * alpha_j0 / inv.ao_abs; };

  const int node_count = (n - 1) / 2;
  for (int r = 0; r < node_count; ++r) {
    InfoNode node;
    node.level = r + 1;
    if (r == 0) {
      node.members = {0, 1, 2};
    } else {
      node.members = {-1, 2 * r + 1, 2 * r + 2};
    }
    for (int m : node.members) {
      node.member_eigenvalues.push_back(m < 0 ? net.nodes.back().alpha3 : net.spectrum(m));
    }
    const double alpha_j0 = net.spectrum(node.members.back());
    node.alpha3 = joined(alpha_j0);
    node.cooperation_time = inv.ao_abs / alpha_j0;
    node.info_nats = rep.node_transfer_nats;
    node.info_bits = rep.node_bits;
    net.nodes.push_back(std::move(node));
  }
  if (n % 2 == 0) {
    InfoNode& last = net.nodes.back();
    last.members.push_back(n - 1);
    last.member_eigenvalues.push_back(net.spectrum(n - 1));
    last.carries_leftover = true;
    net.warnings.push_back("even n: mode " + std::to_string(n) + " attached to the final node unpaired");
  }
  for (const auto& node : net.nodes) net.total_nats += node.info_nats;
  net.total_bits = net.total_nats / kLn2;
  net.code = emit_code(net);
  return net;
}

std::string outline(const InfoNetwork& net) {
  std::ostringstream os;
  os << std::setprecision(6);
  os << "IN n=" << net.n << " gamma=" << net.gamma << " nodes=" << net.node_count()
     << " code=" << (net.code.empty() ? "-" : net.code) << '\n';
  for (const auto& node : net.nodes) {
    os << std::string(2 * node.level, ' ') << "node " << node.level << ": alpha3=" << node.alpha3
       << " t=" << node.cooperation_time << " info=" << node.info_nats << " nats (" << node.info_bits
       << " bits) members=[";
    for (std::size_t k = 0; k < node.members.size(); ++k) {
      if (k) os << ", ";
      if (node.members[k] < 0) {
        os << "node " << node.level - 1;
      } else {
        os << "mode " << node.members[k] + 1;
      }
    }
    os << "]" << (node.carries_leftover ? " (unpaired leftover)" : "") << '\n';
  }
  return os.str();
}

namespace {

struct Switch {
  double t;
  char letter;
};

std::vector<Switch> switches(const SegmentSchedule& schedule) {
  std::vector<Switch> out;
  for (const auto& ev : schedule.needle_events) out.push_back({ev.tau, kNeedleLetter});
  // the first segment's control is applied at the start, not switched
  for (std::size_t k = 1; k < schedule.segments.size(); ++k) {
    out.push_back({schedule.segments[k].start, kRegularLetter});
  }
  std::stable_sort(out.begin(), out.end(), [](const Switch& x, const Switch& y) {
    if (x.t != y.t) return x.t < y.t;
    return x.letter == kNeedleLetter && y.letter != kNeedleLetter;
  });
  return out;
}

}  // namespace

std::string emit_code(const SegmentSchedule& schedule) {
  std::string code;
  for (const auto& s : switches(schedule)) code.push_back(s.letter);
  return code;
}

std::string emit_code(const InfoNetwork& net) {
  std::string code;
  for (std::size_t k = 0; k < net.nodes.size(); ++k) code += kTripletCode;
  return code;
}

std::string emit_timed_code(const SegmentSchedule& schedule, double unit) {
  if (!(unit > 0.0)) throw InputError("emit_timed_code: unit must be positive");
  std::ostringstream os;
  bool first = true;
  for (const auto& s : switches(schedule)) {
    if (!first) os << ' ';
    first = false;
    os << s.letter << '@' << std::llround(s.t / unit);
  }
  return os.str();
}

MaxRatio max_ratio_check(int n) {
  if (n < 0) throw InputError("max_ratio_check: n must be >= 0");
  MaxRatio m;
  m.n = n;
  m.formula = 2.21 * std::pow(3.89, 0.5 * n);
  m.spectrum_ratio = 1.0;
  if (n >= 1) {
    const Vector s = optimal_spectrum(n, 1.0);
    m.spectrum_ratio = s(0) / s(n - 1);
  }
  m.relative_gap = std::abs(m.formula - m.spectrum_ratio) / m.spectrum_ratio;
  return m;
}

}  // namespace ipf
