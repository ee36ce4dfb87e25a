// param_poly.hpp
// Multivariate polynomials over the rationals in named formal parameters
// (typically just {n}). Exponent vectors are dense over the declared
// parameter list; canonical form stores no zero coefficients, so equality
// is structural comparison of term maps.
#ifndef CHOW_PARAM_POLY_HPP
#define CHOW_PARAM_POLY_HPP

#include "chow/rational.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace chow {

using Params = std::vector<std::string>; // parameter names, alphabetical
using Exponents = std::vector<int>;

// Graded-lexicographic compare on exponent vectors, parameters alphabetical
// (i.e. in declaration order, since Params is kept sorted).
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

class ParamPoly {
public:
    ParamPoly() = default;
    explicit ParamPoly(Params params) : params_(std::move(params)) {}

    static ParamPoly constant(const Params& params, Rational c) {
        ParamPoly p(params);
        if (!c.is_zero()) p.terms_[Exponents(params.size(), 0)] = std::move(c);
        return p;
    }
    static ParamPoly variable(const Params& params, const std::string& name) {
        auto it = std::find(params.begin(), params.end(), name);
        if (it == params.end()) throw error("ParamPoly: unknown parameter " + name);
        ParamPoly p(params);
        Exponents e(params.size(), 0);
        e[static_cast<size_t>(it - params.begin())] = 1;
        p.terms_[e] = Rational(1);
        return p;
    }

    const Params& params() const { return params_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        return terms_.size() == 1 && total_degree() == 0;
    }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw error("ParamPoly: not a constant");
        return terms_.begin()->second;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    ParamPoly operator-() const {
        ParamPoly r(params_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    ParamPoly& operator+=(const ParamPoly& o) {
        check_params(o);
        for (const auto& [e, c] : o.terms_) {
            auto it = terms_.find(e);
            if (it == terms_.end()) {
                terms_[e] = c;
            } else {
                it->second += c;
                if (it->second.is_zero()) terms_.erase(it);
            }
        }
        return *this;
    }
    ParamPoly& operator-=(const ParamPoly& o) { return *this += -o; }

    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }

    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
        a.check_params(b);
        ParamPoly r(a.params_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                Rational c = ca * cb;
                auto it = r.terms_.find(e);
                if (it == r.terms_.end()) {
                    if (!c.is_zero()) r.terms_[e] = std::move(c);
                } else {
                    it->second += c;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        return r;
    }

    ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

    ParamPoly operator*(const Rational& c) const {
        ParamPoly r(params_);
        if (c.is_zero()) return r;
        for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
        return r;
    }

    friend bool operator==(const ParamPoly& a, const ParamPoly& b) {
        return a.params_ == b.params_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }

    Rational eval(const std::map<std::string, Rational>& bindings) const {
        std::vector<Rational> vals(params_.size());
        for (size_t i = 0; i < params_.size(); ++i) {
            auto it = bindings.find(params_[i]);
            if (it == bindings.end())
                throw error("ParamPoly: missing binding for " + params_[i]);
            vals[i] = it->second;
        }
        Rational sum(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t *= vals[i];
            sum += t;
        }
        return sum;
    }

    // Deterministic rendering, highest grlex term first: "2n^3-8n^2+9n-1".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            bool neg = c < Rational(0);
            Rational a = neg ? -c : c;
            std::string mono;
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                mono += params_[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            std::string coeff;
            if (mono.empty() || a != Rational(1)) coeff = a.str();
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? "-" : "+";
            out += coeff + mono;
        }
        return out;
    }

    const std::map<Exponents, Rational, GrlexLess>& terms() const { return terms_; }

private:
    void check_params(const ParamPoly& o) const {
        if (params_ != o.params_) throw error("ParamPoly: parameter-set mismatch");
    }

    Params params_;
    std::map<Exponents, Rational, GrlexLess> terms_;
};

} // namespace chow

#endif
