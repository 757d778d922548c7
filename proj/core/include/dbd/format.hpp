#ifndef DBD_FORMAT_HPP
#define DBD_FORMAT_HPP

#include <string>

namespace dbd {

inline constexpr int kReportedDigits = 6;

// printf("%.*g") with kReportedDigits significant digits.
std::string format_real(double value, int digits = kReportedDigits);
std::string format_real(long double value, int digits = kReportedDigits);

// Nearest double to format_real(value); used for JSON output.
double round_significant(double value, int digits = kReportedDigits);

}  // namespace dbd

#endif  // DBD_FORMAT_HPP
