#include "adfam/rat.hpp"

#include <utility>

namespace adfam {

Rat::Rat(mpz_class num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ <= 0 || num_ <= 0) {
        throw domain_error("rational must have positive numerator and denominator, got " +
                           num_.get_str() + "/" + den_.get_str());
    }
    if (num_ >= den_) {
        throw domain_error("rational " + num_.get_str() + "/" + den_.get_str() +
                           " is not inside the open interval (0,1)");
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
    if (g != 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rat Rat::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos || slash == 0 || slash + 1 == text.size()) {
        throw domain_error("rational must be written A/B, got '" + std::string(text) + "'");
    }
    const std::string a(text.substr(0, slash));
    const std::string b(text.substr(slash + 1));
    mpz_class num, den;
    if (mpz_set_str(num.get_mpz_t(), a.c_str(), 10) != 0 ||
        mpz_set_str(den.get_mpz_t(), b.c_str(), 10) != 0) {
        throw domain_error("rational must be written A/B with decimal integers, got '" +
                           std::string(text) + "'");
    }
    return Rat(std::move(num), std::move(den));
}

std::string Rat::str() const {
    return num_.get_str() + "/" + den_.get_str();
}

} // namespace adfam
