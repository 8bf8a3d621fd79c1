#include "twofac/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "twofac/errors.hpp"
#include "twofac/format.hpp"

namespace twofac {

namespace {

// Position of the dictator as a proportion of the profile width.
double proportion(const LocationProfile& p, double x) { return (x - p.min()) / p.width(); }

void require_agent(const std::optional<AgentId>& id, std::size_t n, const char* role) {
  if (!id) throw InvalidSpec(std::string(role) + " agent is required");
  if (id->value() < 1 || id->value() > n) {
    throw InvalidSpec(std::string(role) + " id " + std::to_string(id->value()) +
                      " out of range for n=" + std::to_string(n));
  }
}

void require_open(double v, double lo, double hi, const char* what) {
  if (!(v > lo && v < hi)) {
    throw InvalidSpec(std::string(what) + "=" + format_double(v) + " outside (" + format_double(lo) +
                      ", " + format_double(hi) + ")");
  }
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::LeftRight: return "leftright";
    case Family::M1: return "m1";
    case Family::M2: return "m2";
    case Family::M3: return "m3";
    case Family::M4: return "m4";
    case Family::M5: return "m5";
    case Family::Fixture: return "fixture";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "leftright" || name == "lr") return Family::LeftRight;
  if (name == "m1") return Family::M1;
  if (name == "m2") return Family::M2;
  if (name == "m3") return Family::M3;
  if (name == "m4") return Family::M4;
  if (name == "m5") return Family::M5;
  if (name == "fixture") return Family::Fixture;
  throw InvalidFamily("unknown mechanism family '" + std::string(name) + "'");
}

std::string_view selector_name(MiddleSelector s) {
  return s == MiddleSelector::ThreeL ? "3L" : "-2L";
}

MiddleSelector parse_selector(std::string_view name) {
  if (name == "3L" || name == "three-l") return MiddleSelector::ThreeL;
  if (name == "-2L" || name == "minus-two-l") return MiddleSelector::MinusTwoL;
  throw InvalidSpec("unknown middle selector '" + std::string(name) + "'");
}

bool is_dictator_family(Family f) { return f != Family::LeftRight && f != Family::Fixture; }

std::string_view branch_name(Branch b) {
  switch (b) {
    case Branch::Degenerate: return "degenerate";
    case Branch::Extremes: return "extremes";
    case Branch::Right: return "right";
    case Branch::Left: return "left";
    case Branch::Middle: return "middle";
    case Branch::Mean: return "mean";
  }
  return "unknown";
}

MechanismSpec MechanismSpec::left_right() { return {}; }

MechanismSpec MechanismSpec::mech1(AgentId t) {
  MechanismSpec s;
  s.family = Family::M1;
  s.dictator = t;
  return s;
}

MechanismSpec MechanismSpec::mech2(AgentId t, double a, double k) {
  MechanismSpec s;
  s.family = Family::M2;
  s.dictator = t;
  s.a = a;
  s.k = k;
  return s;
}

MechanismSpec MechanismSpec::mech3(AgentId t, double epsilon, MiddleSelector middle) {
  MechanismSpec s;
  s.family = Family::M3;
  s.dictator = t;
  s.epsilon = epsilon;
  s.middle = middle;
  return s;
}

MechanismSpec MechanismSpec::mech4(AgentId t, AgentId i, double a) {
  MechanismSpec s;
  s.family = Family::M4;
  s.dictator = t;
  s.witness = i;
  s.a = a;
  return s;
}

MechanismSpec MechanismSpec::mech5(AgentId t, std::vector<double> c) {
  MechanismSpec s;
  s.family = Family::M5;
  s.dictator = t;
  s.c = std::move(c);
  return s;
}

MechanismSpec MechanismSpec::fixture() {
  MechanismSpec s;
  s.family = Family::Fixture;
  return s;
}

void MechanismSpec::validate(std::size_t n) const {
  if (n == 0) throw InvalidSpec("profile is empty");
  if (is_dictator_family(family)) require_agent(dictator, n, "dictator");
  switch (family) {
    case Family::LeftRight:
    case Family::M1:
    case Family::Fixture:
      break;
    case Family::M2:
      require_open(a, 0.0, 1.0, "a");
      if (!(k >= 2.0) || !std::isfinite(k)) throw InvalidSpec("k=" + format_double(k) + " must be >= 2");
      break;
    case Family::M3:
      require_open(epsilon, 0.0, 0.5, "epsilon");
      break;
    case Family::M4:
      require_open(a, 0.0, 0.5, "a");
      require_agent(witness, n, "witness");
      if (*witness == *dictator) throw InvalidSpec("witness agent must differ from the dictator");
      break;
    case Family::M5: {
      if (c.size() != n) {
        throw InvalidSpec("c has " + std::to_string(c.size()) + " entries, expected n=" + std::to_string(n));
      }
      const double cap = 1.0 / (2.0 * static_cast<double>(n));
      for (std::size_t i = 0; i < n; ++i) {
        if (i == dictator->index()) continue;
        require_open(c[i], 0.0, cap, "c_i");
      }
      break;
    }
  }
}

std::string MechanismSpec::params() const {
  std::string out;
  auto add = [&out](const std::string& kv) {
    if (!out.empty()) out += ';';
    out += kv;
  };
  if (is_dictator_family(family) && dictator) add("t=" + std::to_string(dictator->value()));
  switch (family) {
    case Family::M2:
      add("a=" + format_double(a));
      add("k=" + format_double(k));
      break;
    case Family::M3:
      add("eps=" + format_double(epsilon));
      add("sel=" + std::string(selector_name(middle)));
      break;
    case Family::M4:
      if (witness) add("i=" + std::to_string(witness->value()));
      add("a=" + format_double(a));
      break;
    case Family::M5: {
      std::string cs;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) cs += '|';
        cs += format_double(c[i]);
      }
      add("c=" + cs);
      break;
    }
    default:
      break;
  }
  return out;
}

FacilityPair mech_left_right(const LocationProfile& p) { return {p.min(), p.max()}; }

FacilityPair mech1(const LocationProfile& p, AgentId t) {
  const double xt = p[t];
  const double d_a = xt - p.min();
  const double d_b = p.max() - xt;
  if (d_a <= d_b) return {xt, xt + std::max(2.0 * d_a, d_b)};
  return {xt, xt - std::max(d_a, 2.0 * d_b)};
}

MechanismOutput mech2(const LocationProfile& p, AgentId t, double a, double k) {
  const double xt = p[t];
  const double d_a = xt - p.min();
  const double d_b = p.max() - xt;
  MechanismOutput out;
  out.switching_threshold = a;
  if (proportion(p, xt) < a) {
    out.facilities = {xt, xt + std::max((1.0 - a) * k / a * d_a, d_b)};
    out.branch = Branch::Right;
  } else {
    out.facilities = {xt, xt - std::max(d_a, a * k / (1.0 - a) * d_b)};
    out.branch = Branch::Left;
  }
  return out;
}

MechanismOutput mech3(const LocationProfile& p, AgentId t, double epsilon, MiddleSelector middle) {
  const double xt = p[t];
  const double d_a = xt - p.min();
  const double d_b = p.max() - xt;
  const double stretch = 2.0 / epsilon - 2.0;
  const double r = proportion(p, xt);
  MechanismOutput out;
  out.switching_threshold = epsilon;
  if (r <= epsilon) {
    out.facilities = {xt, xt + std::max(stretch * d_a, d_b)};
    out.branch = Branch::Right;
  } else if (r >= 1.0 - epsilon) {
    out.facilities = {xt, xt - std::max(d_a, stretch * d_b)};
    out.branch = Branch::Left;
  } else {
    const double l2 = middle == MiddleSelector::ThreeL ? p.min() + 3.0 * p.width()
                                                       : p.min() - 2.0 * p.width();
    out.facilities = {xt, l2};
    out.branch = Branch::Middle;
  }
  return out;
}

MechanismOutput mech4(const LocationProfile& p, AgentId t, AgentId i, double a) {
  if (p[i] <= p[t]) return mech2(p, t, a, 2.0);
  return mech2(p, t, 1.0 - a, 2.0);
}

double mech5_threshold(const LocationProfile& p, AgentId t, const std::vector<double>& c) {
  double a = 0.5;
  const double xt = p[t];
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i == t.index()) continue;
    if (p.positions()[i] <= xt) a -= c[i];
    else a += c[i];
  }
  return a;
}

MechanismOutput mech5(const LocationProfile& p, AgentId t, const std::vector<double>& c) {
  return mech2(p, t, mech5_threshold(p, t, c), 2.0);
}

FacilityPair fixture_non_sp(const LocationProfile& p) {
  const auto xs = p.positions();
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  return {p.min(), mean};
}

MechanismOutput run(const MechanismSpec& spec, const LocationProfile& p) {
  spec.validate(p.size());
  if (p.degenerate()) {
    return {{p.min(), p.min()}, Branch::Degenerate, std::nullopt};
  }
  switch (spec.family) {
    case Family::LeftRight:
      return {mech_left_right(p), Branch::Extremes, std::nullopt};
    case Family::M1: {
      const FacilityPair f = mech1(p, *spec.dictator);
      return {f, f.l2 >= f.l1 ? Branch::Right : Branch::Left, 0.5};
    }
    case Family::M2:
      return mech2(p, *spec.dictator, spec.a, spec.k);
    case Family::M3:
      return mech3(p, *spec.dictator, spec.epsilon, spec.middle);
    case Family::M4:
      return mech4(p, *spec.dictator, *spec.witness, spec.a);
    case Family::M5:
      return mech5(p, *spec.dictator, spec.c);
    case Family::Fixture:
      return {fixture_non_sp(p), Branch::Mean, std::nullopt};
  }
  throw InvalidSpec("unhandled mechanism family");
}

bool extreme_or_coincident(const LocationProfile& p, const FacilityPair& f, double tol) {
  auto extreme = [&](double l) { return l >= p.max() - tol || l <= p.min() + tol; };
  return extreme(f.l1) || extreme(f.l2) || std::abs(f.l1 - f.l2) <= tol;
}

}  // namespace twofac
