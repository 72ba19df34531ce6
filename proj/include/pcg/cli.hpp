#ifndef PCG_CLI_HPP_
#define PCG_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace pcg::cli {

  inline constexpr int kOk = 0;
  inline constexpr int kDomainError = 1;
  inline constexpr int kUsageError = 2;

  // args excludes the program name.  Output is buffered and written only when
  // the command succeeds.
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace pcg::cli

#endif  // PCG_CLI_HPP_
