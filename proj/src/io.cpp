#include "twofac/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "twofac/errors.hpp"
#include "twofac/format.hpp"

namespace twofac {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string str(std::size_t v) { return std::to_string(v); }

}  // namespace

LocationProfile parse_profile(std::istream& in) {
  std::vector<double> xs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body(line);
    if (line_no == 1 && body.starts_with("\xEF\xBB\xBF")) body.remove_prefix(3);
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    if (body.front() == '+') body.remove_prefix(1);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), x);
    if (ec != std::errc() || ptr != body.data() + body.size()) {
      throw ParseError(line_no, "expected a decimal position, got '" + std::string(body) + "'");
    }
    if (!std::isfinite(x)) throw ParseError(line_no, "position must be finite");
    xs.push_back(x);
  }
  if (xs.empty()) throw EmptyProfile();
  return LocationProfile(std::move(xs));
}

LocationProfile parse_profile_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile file " + path.string());
  return parse_profile(in);
}

void write_profile(std::ostream& out, const LocationProfile& p) {
  for (double x : p.positions()) out << format_double(x) << '\n';
}

void CsvWriter::field(std::string_view f, bool first) {
  if (!first) out_ << ',';
  if (f.find_first_of(",\"\n\r") == std::string_view::npos) {
    out_ << f;
    return;
  }
  out_ << '"';
  for (char ch : f) {
    if (ch == '"') out_ << '"';
    out_ << ch;
  }
  out_ << '"';
}

void CsvWriter::row(std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (auto f : fields) {
    field(f, first);
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::row(std::span<const std::string> fields) {
  bool first = true;
  for (const auto& f : fields) {
    field(f, first);
    first = false;
  }
  out_ << '\n';
}

void write_violations_csv(std::ostream& out, std::span<const Violation> violations) {
  CsvWriter csv(out);
  csv.row({"family", "params", "n", "agent", "true_pos", "misreport", "honest_cost", "deviant_cost", "gain"});
  for (const auto& v : violations) {
    csv.row({family_name(v.spec.family), v.spec.params(), str(v.profile.size()), str(v.agent.value()),
             format_double(v.true_pos), format_double(v.misreport), format_double(v.honest_cost),
             format_double(v.deviant_cost), format_double(v.gain())});
  }
}

void write_ratio_csv(std::ostream& out, std::span<const RatioRow> rows) {
  CsvWriter csv(out);
  csv.row({"family", "params", "n", "sc", "opt", "ratio", "bound", "instance_id"});
  for (const auto& r : rows) {
    csv.row({r.family, r.params, str(r.n), format_double(r.sc), format_double(r.opt), format_double(r.ratio),
             format_double(r.bound), str(r.instance_id)});
  }
}

void write_witness_csv(std::ostream& out, std::span<const WitnessRow> rows) {
  CsvWriter csv(out);
  csv.row({"family", "params", "dictator", "n", "epsilon", "sc", "opt", "ratio", "n_over_4"});
  for (const auto& r : rows) {
    csv.row({r.family, r.params, str(r.dictator), str(r.n), format_double(r.epsilon), format_double(r.sc),
             format_double(r.opt), format_double(r.ratio), format_double(r.n_over_4)});
  }
}

void write_shape_failures_csv(std::ostream& out, std::string_view ensemble, std::span<const ShapeFailure> failures,
                              bool header) {
  CsvWriter csv(out);
  if (header) csv.row({"instance_id", "ensemble", "family", "params", "n", "min", "max", "l1", "l2"});
  for (const auto& f : failures) {
    csv.row({str(f.instance_id), ensemble, family_name(f.spec.family), f.spec.params(), str(f.profile.size()),
             format_double(f.profile.min()), format_double(f.profile.max()), format_double(f.facilities.l1),
             format_double(f.facilities.l2)});
  }
}

}  // namespace twofac
