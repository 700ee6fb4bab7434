#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace argus {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one CLI invocation. `args` excludes the program name.
///
///   validate FILE
///   transform FILE [--format json|dot]
///   evaluate FILE [--set ID=G]... [--format text|json]
///   tornado FILE --target ID [--top K] [--var KEY]... [--format text|json|svg]
///   export FILE --dot OUT [--with-values]
///   serve --port N --model FILE [--host H] [--cors-origin O]
int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace argus
