// Exact rational scalar used for every length, breakpoint and coordinate.
//
// Backed by GMP's mpq_class. Values are always kept in lowest terms with a
// positive denominator, so structural equality of containers of Rat is value
// equality.

#ifndef DPATH_RAT_HPP_
#define DPATH_RAT_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "error.hpp"

namespace dpath {

  class Rat {
   public:
    Rat() : _q(0) {}
    Rat(long v) : _q(v) {}  // NOLINT(runtime/explicit)
    Rat(int v) : _q(v) {}   // NOLINT(runtime/explicit)
    Rat(long num, long den) {
      if (den == 0) {
        fail(Errc::invalid_argument, "rational with zero denominator");
      }
      _q = mpq_class(num, den);
      _q.canonicalize();
    }
    explicit Rat(mpq_class q) : _q(std::move(q)) { _q.canonicalize(); }

    // Accepts "p", "-p", "p/q"; whitespace is not allowed.
    static Rat parse(std::string_view s) {
      auto bad = [&]() -> Rat {
        fail(Errc::parse, "malformed rational '" + std::string(s) + "'");
      };
      if (s.empty()) {
        return bad();
      }
      auto slash  = s.find('/');
      auto digits = [](std::string_view d, bool allow_sign) {
        if (d.empty()) {
          return false;
        }
        size_t i = 0;
        if (allow_sign && (d[0] == '-' || d[0] == '+')) {
          i = 1;
        }
        if (i == d.size()) {
          return false;
        }
        for (; i < d.size(); ++i) {
          if (d[i] < '0' || d[i] > '9') {
            return false;
          }
        }
        return true;
      };
      std::string_view num = s.substr(0, slash);
      std::string_view den = slash == std::string_view::npos
                                 ? std::string_view("1")
                                 : s.substr(slash + 1);
      if (!digits(num, true) || !digits(den, false)) {
        return bad();
      }
      std::string n(num);
      if (!n.empty() && n[0] == '+') {
        n.erase(0, 1);
      }
      mpz_class zn(n, 10), zd(std::string(den), 10);
      if (zd == 0) {
        return bad();
      }
      return Rat(mpq_class(zn, zd));
    }

    std::string str() const {
      if (_q.get_den() == 1) {
        return _q.get_num().get_str();
      }
      return _q.get_num().get_str() + "/" + _q.get_den().get_str();
    }

    mpq_class const& raw() const noexcept { return _q; }

    bool is_integer() const { return _q.get_den() == 1; }

    // Largest integer not exceeding the value.
    long floor() const {
      mpz_class f;
      mpz_fdiv_q(f.get_mpz_t(), _q.get_num_mpz_t(), _q.get_den_mpz_t());
      return f.get_si();
    }

    int sign() const { return sgn(_q); }

    double to_double() const { return _q.get_d(); }

    Rat& operator+=(Rat const& o) {
      _q += o._q;
      return *this;
    }
    Rat& operator-=(Rat const& o) {
      _q -= o._q;
      return *this;
    }
    Rat& operator*=(Rat const& o) {
      _q *= o._q;
      return *this;
    }
    Rat& operator/=(Rat const& o) {
      if (o._q == 0) {
        fail(Errc::invalid_argument, "division by zero");
      }
      _q /= o._q;
      return *this;
    }

    friend Rat operator+(Rat a, Rat const& b) { return a += b; }
    friend Rat operator-(Rat a, Rat const& b) { return a -= b; }
    friend Rat operator*(Rat a, Rat const& b) { return a *= b; }
    friend Rat operator/(Rat a, Rat const& b) { return a /= b; }
    friend Rat operator-(Rat const& a) { return Rat(mpq_class(-a._q)); }

    friend bool operator==(Rat const& a, Rat const& b) { return a._q == b._q; }
    friend std::strong_ordering operator<=>(Rat const& a, Rat const& b) {
      int c = cmp(a._q, b._q);
      return c < 0 ? std::strong_ordering::less
                   : (c > 0 ? std::strong_ordering::greater
                            : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, Rat const& r) {
      return os << r.str();
    }

   private:
    mpq_class _q;
  };

  inline Rat min(Rat const& a, Rat const& b) { return b < a ? b : a; }
  inline Rat max(Rat const& a, Rat const& b) { return a < b ? b : a; }

}  // namespace dpath

#endif  // DPATH_RAT_HPP_
