// Error type shared by the dpath kernel, the text loaders and the CLI.

#ifndef DPATH_ERROR_HPP_
#define DPATH_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dpath {

  enum class Errc {
    invalid_argument,  // malformed operands to a kernel operation
    length_mismatch,   // composing maps or paths whose lengths disagree
    endpoint_mismatch, // composing paths whose endpoints disagree
    flavor,            // a non-invertible reparametrization under flavor G
    validation,        // a complex or path breaks a structural invariant
    resolve,           // a boundary point the attaching family cannot resolve
    budget,            // enumeration on a looping complex without a bound
    parse              // text input could not be read
  };

  inline char const* errc_name(Errc e) {
    switch (e) {
      case Errc::invalid_argument: return "invalid_argument";
      case Errc::length_mismatch: return "length_mismatch";
      case Errc::endpoint_mismatch: return "endpoint_mismatch";
      case Errc::flavor: return "flavor";
      case Errc::validation: return "validation";
      case Errc::resolve: return "resolve";
      case Errc::budget: return "budget";
      case Errc::parse: return "parse";
    }
    return "unknown";
  }

  class Error : public std::runtime_error {
   public:
    Error(Errc code, std::string const& what)
        : std::runtime_error(what), _code(code) {}

    Errc code() const noexcept { return _code; }

   private:
    Errc _code;
  };

  [[noreturn]] inline void fail(Errc code, std::string const& what) {
    throw Error(code, what);
  }

}  // namespace dpath

#endif  // DPATH_ERROR_HPP_
