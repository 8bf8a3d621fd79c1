#pragma once

#include <string>

namespace twofac {

/// Shortest decimal representation that parses back to exactly the same double.
std::string format_double(double x);

}  // namespace twofac
