#pragma once

#include <string>

namespace zipfkit {

// All numeric output uses 10 significant digits ("%.10g").
inline constexpr int kOutputDigits = 10;

std::string format_number(double v);

// v rounded to kOutputDigits significant digits, so JSON serialisers that
// print the shortest round-trip form emit at most that many digits.
double round_sig(double v);

}  // namespace zipfkit
