#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace popcast::detail {

std::string shortest(double value);
std::optional<double> to_double(std::string_view text);
std::optional<long long> to_integer(std::string_view text);
std::string_view trim(std::string_view text);

}  // namespace popcast::detail
