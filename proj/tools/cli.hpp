// Entry point of the `ompconf` command line tool, callable in-process.
#pragma once

#include <iosfwd>

namespace ompconf::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kTestsFailed = 1;  // only with `run --strict`
inline constexpr int kConfigError = 2;
inline constexpr int kCorpusError = 3;
inline constexpr int kInputError = 4;

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ompconf::cli
