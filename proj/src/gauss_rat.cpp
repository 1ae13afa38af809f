#include "trlab/gauss_rat.hpp"

namespace trlab {

namespace {

// Splits "a+bi"-style text at the sign separating the two components.  The
// separator is a '+'/'-' that is not the leading sign and not part of a
// previous token's interior (components are sign-free rational/decimal
// literals, so any later sign starts the imaginary part).
std::size_t find_split(const std::string& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || s[i] == '-') return i;
    return std::string::npos;
}

}  // namespace

GaussRat GaussRat::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseFailure("empty Gaussian rational literal");

    auto parse_imag_token = [](std::string token) -> Rat {
        // token ends with 'i'; bare "i"/"+i"/"-i" mean coefficient 1.
        token.pop_back();
        if (token.empty() || token == "+") return Rat(1);
        if (token == "-") return Rat(-1);
        return Rat::parse(token);
    };

    auto split = find_split(s);
    if (split == std::string::npos) {
        if (s.back() == 'i') return GaussRat(Rat(0), parse_imag_token(s));
        return GaussRat(Rat::parse(s));
    }
    std::string head = s.substr(0, split);
    std::string tail = s.substr(split);
    if (tail.back() != 'i')
        throw ParseFailure("expected imaginary tail in '" + text + "'");
    if (head.back() == 'i')
        throw ParseFailure("two imaginary parts in '" + text + "'");
    return GaussRat(Rat::parse(head), parse_imag_token(tail));
}

std::string GaussRat::to_string() const {
    if (im_.is_zero()) return re_.to_string();
    std::string imag;
    if (im_ == Rat(1)) {
        imag = "i";
    } else if (im_ == Rat(-1)) {
        imag = "-i";
    } else {
        imag = im_.to_string() + "i";
    }
    if (re_.is_zero()) return imag;
    if (im_.sign() > 0) return re_.to_string() + "+" + imag;
    return re_.to_string() + imag;
}

}  // namespace trlab
