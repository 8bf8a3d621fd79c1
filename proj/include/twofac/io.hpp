#pragma once

// Profile text format and CSV report emission.
//
// Profile text: one decimal position per line, agent ids in line order.
// '#' starts a comment that runs to the end of the line; blank lines are
// ignored. CSV: comma-separated with a header row; numbers use the shortest
// representation that round-trips; fields containing ',', '"' or a newline
// are quoted RFC-4180 style.

#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twofac/prediction.hpp"
#include "twofac/profile.hpp"
#include "twofac/ratio.hpp"
#include "twofac/verification.hpp"

namespace twofac {

/// Throws ParseError (with line number) or EmptyProfile.
LocationProfile parse_profile(std::istream& in);
LocationProfile parse_profile_file(const std::filesystem::path& path);
void write_profile(std::ostream& out, const LocationProfile& p);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(std::initializer_list<std::string_view> fields);
  void row(std::span<const std::string> fields);

 private:
  void field(std::string_view f, bool first);
  std::ostream& out_;
};

void write_violations_csv(std::ostream& out, std::span<const Violation> violations);
void write_ratio_csv(std::ostream& out, std::span<const RatioRow> rows);
void write_witness_csv(std::ostream& out, std::span<const WitnessRow> rows);
void write_shape_failures_csv(std::ostream& out, std::string_view ensemble, std::span<const ShapeFailure> failures,
                              bool header = true);

}  // namespace twofac
