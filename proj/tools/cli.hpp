#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace omd::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kPrecondition = 2, kVerification = 3 };

/// Runs one command line. The report goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a over the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace omd::cli
