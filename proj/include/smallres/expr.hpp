#pragma once

#include <string_view>

#include "smallres/bigmod.hpp"

namespace smallres {

/// Parses a nonnegative integer written in decimal or as base^exp+offset /
/// base^exp-offset (e.g. "10^24+7", "2^128+51"). Throws UsageError.
BigInt parse_big_expression(std::string_view text);

/// Same grammar, result must fit in 64 bits.
std::uint64_t parse_u64_expression(std::string_view text);

}  // namespace smallres
