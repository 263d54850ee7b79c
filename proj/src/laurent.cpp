#include "coxkl/laurent.hpp"

#include <charconv>

namespace coxkl::detail {

std::int64_t parse_int64(std::string_view s) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec == std::errc::result_out_of_range) throw OverflowError("coefficient out of 64-bit range: " + std::string(s));
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("bad integer '" + std::string(s) + "'");
  return value;
}

}  // namespace coxkl::detail
