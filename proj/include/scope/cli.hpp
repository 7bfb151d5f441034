// cli.hpp — command-line front end: parse state/channel files, run selected
// analyses, emit machine-readable reports.

#pragma once

namespace scope::cli {

// Exit codes are a stable contract:
//   0 inconclusive, 1 detected / NotEB, 2 usage or parse error,
//   3 validation error, 4 numeric failure.
inline constexpr int kExitInconclusive = 0;
inline constexpr int kExitDetected = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitNumeric = 4;

int run(int argc, const char* const* argv);

}  // namespace scope::cli
