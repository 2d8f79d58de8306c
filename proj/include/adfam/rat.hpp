#ifndef ADFAM_RAT_HPP
#define ADFAM_RAT_HPP

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "adfam/errors.hpp"

namespace adfam {

// Reduced rational strictly inside (0,1). Every sample point of the
// construction is one of these; all comparisons are exact.
class Rat {
public:
    // Reduces num/den and validates 0 < num/den < 1.
    Rat(mpz_class num, mpz_class den);

    // Parses "A/B" (decimal integers).
    static Rat parse(std::string_view text);

    const mpz_class& num() const { return num_; }
    const mpz_class& den() const { return den_; }

    std::string str() const;  // "A/B"

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = mpz_cmp(mpz_class(a.num_ * b.den_).get_mpz_t(),
                              mpz_class(b.num_ * a.den_).get_mpz_t());
        return c < 0   ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

private:
    mpz_class num_;
    mpz_class den_;
};

} // namespace adfam

#endif
