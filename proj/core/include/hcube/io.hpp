#pragma once

// Text formats: cube functions and generator specs in, reports out.
// Numbers are written with std::to_chars, so output never depends on locale.

#include <string>
#include <string_view>
#include <vector>

#include "hcube/bounds.hpp"
#include "hcube/cube.hpp"
#include "hcube/extremal.hpp"
#include "hcube/verify.hpp"

namespace hcube {

inline constexpr int kHumanDigits = 12;
inline constexpr int kMachineDigits = 17;

/// Shortest of fixed/scientific with `digits` significant digits;
/// non-finite values print as inf, -inf, nan.
std::string format_number(double v, int digits);

/// Accepts {"n": .., "values": [..]} or a generator spec
/// {"kind": "sphere"|"ball"|"mixture"|"constant", "n": .., "r": .., "v": ..}.
/// Malformed text or missing fields raise ParseError.
CubeFunction parse_cube_function(std::string_view text);
std::string cube_function_json(const CubeFunction& f);

/// One JSON object on one line, no trailing newline.
std::string check_report_json(const CheckReport& r);
/// name,n,eps,q,lhs,rhs,slack,pass
std::string check_report_csv_header();
std::string check_report_csv_row(const CheckReport& r);

/// {"spheres": [{"radius_fraction", "log2_value_per_n"}], "uniform_mass"}
std::string profile_json(const RadialProfile& p);
RadialProfile parse_profile(std::string_view text, int n);

std::string tightness_json(const TightnessInstance& t);

std::string suite_report_json(const SuiteReport& r);
/// Long format covering both trend tables:
/// series,n,radius,q,eps,x,rate,lhs,rhs,slack,tightness
std::string trend_csv(const SuiteReport& r);

}  // namespace hcube
