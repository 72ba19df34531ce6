#ifndef PCG_ERROR_HPP_
#define PCG_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcg {

  enum class ErrorCode {
    // graph
    DuplicateVertex,
    UnknownEndpoint,
    SelfLoop,
    UnknownVertex,
    BadParameter,
    // words
    SyntaxError,
    UnknownGenerator,
    ZeroExponent,
    NotCyclicallyMinimal,
    // cosets
    NotAClique,
    // hnn
    LinkNotClique,
    NoSplitFound,
    // frei
    TNotInSupport,
    ConflictingVerdicts,
    // census
    BadAlphabet,
    BudgetExceeded,
    NonIntegralFormula,
    BadSeed,
  };

  std::string_view error_name(ErrorCode code) noexcept;

  // All domain failures raised by the library.  The CLI maps these to exit
  // code 1.
  class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, std::string const& detail)
        : std::runtime_error(std::string(error_name(code)) + ": " + detail),
          _code(code) {}

    ErrorCode code() const noexcept {
      return _code;
    }

   private:
    ErrorCode _code;
  };

}  // namespace pcg

#endif  // PCG_ERROR_HPP_
