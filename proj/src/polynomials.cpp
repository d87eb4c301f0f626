#include "ringrep/polynomials.hpp"

#include <cctype>
#include <sstream>

namespace ringrep {

MultiPoly MultiPoly::constant(int nvars, i64 c) {
    MultiPoly p(nvars);
    p.add_term(std::vector<int>((size_t)nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int index) {
    MultiPoly p(nvars);
    std::vector<int> e((size_t)nvars, 0);
    e[(size_t)index] = 1;
    p.add_term(std::move(e), 1);
    return p;
}

MultiPoly& MultiPoly::add_term(std::vector<int> exps, i64 coeff) {
    if ((int)exps.size() != nvars_) throw std::invalid_argument("MultiPoly: exponent arity mismatch");
    if (coeff == 0) return *this;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(std::move(exps), coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly p = *this;
    for (auto& [e, c] : o.terms_) p.add_term(e, c);
    return p;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly p = *this;
    for (auto& [e, c] : o.terms_) p.add_term(e, -c);
    return p;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly p(nvars_);
    for (auto& [e1, c1] : terms_)
        for (auto& [e2, c2] : o.terms_) {
            std::vector<int> e((size_t)nvars_);
            for (int i = 0; i < nvars_; ++i) e[(size_t)i] = e1[(size_t)i] + e2[(size_t)i];
            p.add_term(std::move(e), c1 * c2);
        }
    return p;
}

MultiPoly MultiPoly::derivative(int var) const {
    MultiPoly p(nvars_);
    for (auto& [e, c] : terms_) {
        if (e[(size_t)var] == 0) continue;
        std::vector<int> d = e;
        d[(size_t)var] -= 1;
        p.add_term(std::move(d), c * e[(size_t)var]);
    }
    return p;
}

i64 MultiPoly::eval_mod(const std::vector<i64>& x, i64 mod) const {
    if ((int)x.size() != nvars_) throw std::invalid_argument("MultiPoly::eval_mod: arity mismatch");
    i64 acc = 0;
    for (auto& [e, c] : terms_) {
        i64 t = mod_reduce(c, mod);
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[(size_t)i]; ++k) t = mod_mul(t, x[(size_t)i], mod);
        acc = mod_reduce(acc + t, mod);
    }
    return acc;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << (it->second >= 0 ? "+" : "");
        os << it->second;
        for (int i = 0; i < nvars_; ++i)
            if (it->first[(size_t)i] > 0) {
                os << "*x" << i;
                if (it->first[(size_t)i] > 1) os << "^" << it->first[(size_t)i];
            }
        first = false;
    }
    return os.str();
}

MultiPoly parse_univariate(const std::string& text) {
    MultiPoly p(1);
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
    skip_ws();
    bool first = true;
    while (i < text.size()) {
        i64 sign = 1;
        skip_ws();
        if (text[i] == '+') { ++i; } else if (text[i] == '-') { sign = -1; ++i; }
        else if (!first) throw std::invalid_argument("parse_univariate: expected '+' or '-'");
        skip_ws();
        i64 coeff = 1;
        bool saw_digits = false;
        if (i < text.size() && std::isdigit((unsigned char)text[i])) {
            coeff = 0;
            while (i < text.size() && std::isdigit((unsigned char)text[i])) {
                coeff = coeff * 10 + (text[i] - '0');
                ++i;
            }
            saw_digits = true;
        }
        skip_ws();
        if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
        int exp = 0;
        if (i < text.size() && text[i] == 'x') {
            ++i;
            exp = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                if (i >= text.size() || !std::isdigit((unsigned char)text[i]))
                    throw std::invalid_argument("parse_univariate: exponent expected");
                exp = 0;
                while (i < text.size() && std::isdigit((unsigned char)text[i])) {
                    exp = exp * 10 + (text[i] - '0');
                    ++i;
                }
            }
        } else if (!saw_digits) {
            throw std::invalid_argument("parse_univariate: term expected");
        }
        p.add_term({exp}, sign * coeff);
        skip_ws();
        first = false;
    }
    return p;
}

}  // namespace ringrep
