#ifndef MALLE_CLI_HPP
#define MALLE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

#include "malle/abelian.hpp"
#include "malle/perm.hpp"

namespace malle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "Q" or "Fq:q=<q>"; q must be coprime to |G|.
BaseField parse_base(const std::string& text, const PermGroup& g);

} // namespace malle::cli

#endif // MALLE_CLI_HPP
