#include "trlab/rat.hpp"

namespace trlab {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat Rat::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseFailure("empty rational literal");

    bool negative = false;
    std::size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        pos = 1;
    }
    std::string body = s.substr(pos);
    if (body.empty()) throw ParseFailure("sign without digits: '" + text + "'");

    Rat magnitude;
    auto slash = body.find('/');
    auto dot = body.find('.');
    if (slash != std::string::npos) {
        std::string num = body.substr(0, slash);
        std::string den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ParseFailure("malformed fraction: '" + text + "'");
        BigInt d(den);
        if (d == 0) throw DivisionByZero("fraction with zero denominator: '" + text + "'");
        magnitude = Rat(BigInt(num), d);
    } else if (dot != std::string::npos) {
        std::string whole = body.substr(0, dot);
        std::string frac = body.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (frac.empty() || !all_digits(whole) || !all_digits(frac))
            throw ParseFailure("malformed decimal: '" + text + "'");
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        magnitude = Rat(BigInt(whole) * scale + BigInt(frac), scale);
    } else {
        if (!all_digits(body)) throw ParseFailure("malformed integer: '" + text + "'");
        magnitude = Rat(BigInt(body));
    }
    return negative ? -magnitude : magnitude;
}

std::string Rat::to_string() const {
    std::string out = num().str();
    if (den() != 1) out += "/" + den().str();
    return out;
}

}  // namespace trlab
