#pragma once

// Command-line front end. Every run writes its human-readable report (or,
// with --json, its JSON mirror) to `out` and exactly one run manifest to
// `err` (or to the --manifest file).
//
// Exit codes: 0 success, 1 a computed table or check disagrees with the
// identity it is meant to reproduce, 2 input error.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace eqnoeth {

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitInput = 2;

/// FNV-1a, 64 bit, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqnoeth
