// graded_ring.hpp
// Finitely presented graded-commutative rings with normal-form rewriting,
// product and projective-bundle constructors, and a top-degree integration
// map. Relations are terminating rewrite rules: each leading monomial is
// replaced by strictly smaller normal-form monomials of the same degree.
// Monomial order: graded-lexicographic with later generators greatest, so
// a bundle class zeta appended last eliminates zeta^2 on sight.
#ifndef CHOW_GRADED_RING_HPP
#define CHOW_GRADED_RING_HPP

#include "chow/param_poly.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace chow {

using Monomial = std::vector<int>; // exponents over the generator list

// Graded order, tie broken lexicographically from the last generator down.
struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

struct Generator {
    std::string name;
    int degree = 1;
};

using TermList = std::vector<std::pair<Monomial, ParamPoly>>;

struct Relation {
    Monomial lead;
    TermList rhs; // may be empty (lead -> 0)
};

class GradedRing;
using RingPtr = std::shared_ptr<const GradedRing>;

class RingElement {
public:
    RingElement() = default;
    RingElement(RingPtr ring, std::map<Monomial, ParamPoly, MonoLess> terms)
        : ring_(std::move(ring)), terms_(std::move(terms)) {}

    const RingPtr& ring() const { return ring_; }
    const std::map<Monomial, ParamPoly, MonoLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    RingElement operator-() const;
    RingElement& operator+=(const RingElement& o);
    RingElement& operator-=(const RingElement& o);
    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    RingElement operator*(const ParamPoly& c) const;
    RingElement operator*(const Rational& c) const;
    RingElement pow(int k) const;

    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.ring_ == b.ring_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

    bool is_homogeneous() const;
    // Degree of a homogeneous element; 0 for the zero element.
    int degree() const;

    std::string str() const;

private:
    RingPtr ring_;
    std::map<Monomial, ParamPoly, MonoLess> terms_;
    friend class GradedRing;
};

class GradedRing : public std::enable_shared_from_this<GradedRing> {
public:
    // Full constructor with all presentation invariants checked: strict
    // reduction of every relation, confluence of the rewrite system on all
    // monomials up to top degree, and a unique top-degree normal monomial
    // equal to the fundamental one.
    static RingPtr make(Params params, std::vector<Generator> gens,
                        std::vector<Relation> rels, int dimension,
                        Monomial fundamental) {
        return RingPtr(new GradedRing(std::move(params), std::move(gens),
                                      std::move(rels), dimension,
                                      std::move(fundamental)));
    }

    // Variant inferring the fundamental monomial: the top degree must have
    // a unique normal-form monomial.
    static RingPtr make(Params params, std::vector<Generator> gens,
                        std::vector<Relation> rels, int dimension) {
        return RingPtr(new GradedRing(std::move(params), std::move(gens),
                                      std::move(rels), dimension, std::nullopt));
    }

    // P^dim with one generator of degree 1 and the relation g^{dim+1} -> 0.
    static RingPtr projective_space(const Params& params, const std::string& gen,
                                    int dim) {
        std::vector<Generator> gens{{gen, 1}};
        Relation rel;
        rel.lead = Monomial{dim + 1};
        return make(params, gens, {rel}, dim, Monomial{dim});
    }

    static RingPtr point(const Params& params) {
        return make(params, {}, {}, 0, Monomial{});
    }

    static RingPtr product(const RingPtr& a, const RingPtr& b) {
        if (a->params_ != b->params_) throw error("product: parameter-set mismatch");
        for (const auto& ga : a->gens_)
            for (const auto& gb : b->gens_)
                if (ga.name == gb.name)
                    throw error("product: generator name clash: " + ga.name);
        std::vector<Generator> gens = a->gens_;
        gens.insert(gens.end(), b->gens_.begin(), b->gens_.end());
        size_t na = a->gens_.size(), nb = b->gens_.size();
        auto lift_a = [&](const Monomial& m) {
            Monomial r(na + nb, 0);
            std::copy(m.begin(), m.end(), r.begin());
            return r;
        };
        auto lift_b = [&](const Monomial& m) {
            Monomial r(na + nb, 0);
            std::copy(m.begin(), m.end(), r.begin() + static_cast<long>(na));
            return r;
        };
        std::vector<Relation> rels;
        for (const auto& rel : a->rels_) {
            Relation nr;
            nr.lead = lift_a(rel.lead);
            for (const auto& [m, c] : rel.rhs) nr.rhs.emplace_back(lift_a(m), c);
            rels.push_back(std::move(nr));
        }
        for (const auto& rel : b->rels_) {
            Relation nr;
            nr.lead = lift_b(rel.lead);
            for (const auto& [m, c] : rel.rhs) nr.rhs.emplace_back(lift_b(m), c);
            rels.push_back(std::move(nr));
        }
        Monomial fund = lift_a(a->fundamental_);
        Monomial fb = lift_b(b->fundamental_);
        for (size_t i = 0; i < fund.size(); ++i) fund[i] += fb[i];
        return make(a->params_, std::move(gens), std::move(rels),
                    a->dimension_ + b->dimension_, std::move(fund));
    }

    // P(E) for a rank-2 bundle E on the base with the sign convention
    // zeta^2 = pi^* c1(E) . zeta - pi^* c2(E).
    static RingPtr projective_bundle(const RingPtr& base, const RingElement& c1,
                                     const RingElement& c2,
                                     const std::string& zeta_name = "zeta") {
        if (c1.ring() != base || c2.ring() != base)
            throw error("projective_bundle: classes not in the base ring");
        if (!c1.is_zero() && !(c1.is_homogeneous() && c1.degree() == 1))
            throw error("projective_bundle: c1 must be homogeneous of degree 1");
        if (!c2.is_zero() && !(c2.is_homogeneous() && c2.degree() == 2))
            throw error("projective_bundle: c2 must be homogeneous of degree 2");
        for (const auto& g : base->gens_)
            if (g.name == zeta_name)
                throw error("projective_bundle: generator name clash: " + zeta_name);
        std::vector<Generator> gens = base->gens_;
        gens.push_back({zeta_name, 1});
        size_t nb = base->gens_.size();
        auto lift = [&](const Monomial& m, int zexp) {
            Monomial r(nb + 1, 0);
            std::copy(m.begin(), m.end(), r.begin());
            r[nb] = zexp;
            return r;
        };
        std::vector<Relation> rels;
        for (const auto& rel : base->rels_) {
            Relation nr;
            nr.lead = lift(rel.lead, 0);
            for (const auto& [m, c] : rel.rhs) nr.rhs.emplace_back(lift(m, 0), c);
            rels.push_back(std::move(nr));
        }
        Relation zrel;
        zrel.lead = lift(Monomial(nb, 0), 2);
        for (const auto& [m, c] : c1.terms()) zrel.rhs.emplace_back(lift(m, 1), c);
        for (const auto& [m, c] : c2.terms()) zrel.rhs.emplace_back(lift(m, 0), -c);
        rels.push_back(std::move(zrel));
        return make(base->params_, std::move(gens), std::move(rels),
                    base->dimension_ + 1, lift(base->fundamental_, 1));
    }

    const Params& params() const { return params_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const std::vector<Relation>& relations() const { return rels_; }
    int dimension() const { return dimension_; }
    const Monomial& fundamental_monomial() const { return fundamental_; }
    const std::vector<Monomial>& basis(int degree) const {
        if (degree < 0 || degree > dimension_)
            throw error("basis: degree out of range");
        return basis_[static_cast<size_t>(degree)];
    }

    int monomial_degree(const Monomial& m) const {
        int d = 0;
        for (size_t i = 0; i < m.size(); ++i) d += m[i] * gens_[i].degree;
        return d;
    }

    RingElement zero() const {
        return RingElement(shared_from_this(), {});
    }
    RingElement one() const { return scalar(ParamPoly::constant(params_, Rational(1))); }
    RingElement scalar(const ParamPoly& c) const {
        std::map<Monomial, ParamPoly, MonoLess> t;
        if (!c.is_zero()) t[Monomial(gens_.size(), 0)] = c;
        return RingElement(shared_from_this(), std::move(t));
    }
    RingElement gen(const std::string& name) const {
        for (size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == name) {
                Monomial m(gens_.size(), 0);
                m[i] = 1;
                return monomial_element(m);
            }
        throw error("gen: no generator named " + name);
    }
    RingElement monomial_element(const Monomial& m) const {
        std::map<Monomial, ParamPoly, MonoLess> out;
        reduce_into(m, ParamPoly::constant(params_, Rational(1)), out);
        return RingElement(shared_from_this(), std::move(out));
    }

    // Map an element of another ring into this one by generator name. Every
    // generator occurring in the element must exist here with equal degree.
    RingElement lift(const RingElement& e) const {
        if (!e.ring()) throw error("lift: empty element");
        const auto& from = e.ring()->gens_;
        std::vector<size_t> idx(from.size());
        for (size_t i = 0; i < from.size(); ++i) {
            bool found = false;
            for (size_t j = 0; j < gens_.size(); ++j)
                if (gens_[j].name == from[i].name) {
                    if (gens_[j].degree != from[i].degree)
                        throw error("lift: degree mismatch for " + from[i].name);
                    idx[i] = j;
                    found = true;
                    break;
                }
            if (!found) throw error("lift: no generator named " + from[i].name);
        }
        std::map<Monomial, ParamPoly, MonoLess> out;
        for (const auto& [m, c] : e.terms()) {
            Monomial nm(gens_.size(), 0);
            for (size_t i = 0; i < m.size(); ++i) nm[idx[i]] += m[i];
            reduce_into(nm, c, out);
        }
        return RingElement(shared_from_this(), std::move(out));
    }

    // Coefficient of the fundamental monomial. The zero element integrates
    // to 0; anything else must be homogeneous of top degree.
    ParamPoly integrate(const RingElement& x) const {
        if (x.ring().get() != this) throw error("integrate: element of another ring");
        if (x.is_zero()) return ParamPoly(params_);
        for (const auto& [m, c] : x.terms())
            if (monomial_degree(m) != dimension_)
                throw error("integrate: element not homogeneous of top degree");
        auto it = x.terms().find(fundamental_);
        return it == x.terms().end() ? ParamPoly(params_) : it->second;
    }

    // Normal-form rewriting: first applicable relation wins; confluence is
    // verified at construction so the choice does not matter.
    void reduce_into(const Monomial& m, const ParamPoly& coeff,
                     std::map<Monomial, ParamPoly, MonoLess>& out) const {
        if (coeff.is_zero()) return;
        for (const auto& rel : rels_) {
            if (!divides(rel.lead, m)) continue;
            Monomial q(m.size());
            for (size_t i = 0; i < m.size(); ++i) q[i] = m[i] - rel.lead[i];
            for (const auto& [rm, rc] : rel.rhs) {
                Monomial nm(m.size());
                for (size_t i = 0; i < m.size(); ++i) nm[i] = rm[i] + q[i];
                reduce_into(nm, coeff * rc, out);
            }
            return;
        }
        auto it = out.find(m);
        if (it == out.end()) {
            out[m] = coeff;
        } else {
            it->second += coeff;
            if (it->second.is_zero()) out.erase(it);
        }
    }

    // Deterministic presentation dump for golden tests.
    std::string dump() const {
        std::ostringstream os;
        os << "ring dim " << dimension_ << "\n";
        for (const auto& g : gens_) os << "gen " << g.name << ":" << g.degree << "\n";
        for (const auto& rel : rels_) {
            os << "rel " << monomial_str(rel.lead) << " -> ";
            if (rel.rhs.empty()) {
                os << "0";
            } else {
                bool first = true;
                for (const auto& [m, c] : rel.rhs) {
                    if (!first) os << " + ";
                    first = false;
                    os << "(" << c.str() << ")*" << monomial_str(m);
                }
            }
            os << "\n";
        }
        for (int d = 0; d <= dimension_; ++d) {
            os << "deg " << d << ":";
            for (const auto& m : basis_[static_cast<size_t>(d)])
                os << " " << monomial_str(m);
            os << "\n";
        }
        os << "fundamental " << monomial_str(fundamental_) << "\n";
        return os.str();
    }

    std::string monomial_str(const Monomial& m) const {
        std::string s;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += gens_[i].name;
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
        return s.empty() ? "1" : s;
    }

private:
    GradedRing(Params params, std::vector<Generator> gens, std::vector<Relation> rels,
               int dimension, std::optional<Monomial> fundamental)
        : params_(std::move(params)), gens_(std::move(gens)), rels_(std::move(rels)),
          dimension_(dimension) {
        if (dimension_ < 0) throw error("ring: negative dimension");
        validate_relations();
        build_bases();
        check_confluence();
        const auto& top = basis_[static_cast<size_t>(dimension_)];
        if (top.size() != 1)
            throw error("ring: top degree does not have a unique normal monomial");
        if (fundamental && *fundamental != top[0])
            throw error("ring: fundamental monomial not the top-degree normal form");
        fundamental_ = top[0];
    }

    static bool divides(const Monomial& a, const Monomial& b) {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    }

    bool is_normal(const Monomial& m) const {
        for (const auto& rel : rels_)
            if (divides(rel.lead, m)) return false;
        return true;
    }

    void validate_relations() const {
        MonoLess less;
        for (const auto& rel : rels_) {
            if (rel.lead.size() != gens_.size())
                throw error("ring: relation arity mismatch");
            int lead_deg = monomial_degree(rel.lead);
            if (lead_deg == 0) throw error("ring: constant relation lead");
            for (const auto& [m, c] : rel.rhs) {
                if (c.is_zero()) throw error("ring: zero coefficient in relation");
                if (monomial_degree(m) != lead_deg)
                    throw error("ring: relation not degree-preserving");
                if (!less(m, rel.lead))
                    throw error("ring: relation replacement not smaller than lead");
                if (!is_normal(m))
                    throw error("ring: relation replacement not in normal form");
            }
        }
    }

    void build_bases() {
        basis_.assign(static_cast<size_t>(dimension_) + 1, {});
        Monomial m(gens_.size(), 0);
        enumerate(m, 0, 0);
        for (auto& b : basis_) std::sort(b.begin(), b.end(), MonoLess{});
    }

    void enumerate(Monomial& m, size_t i, int deg) {
        if (deg > dimension_) return;
        if (i == gens_.size()) {
            if (is_normal(m)) basis_[static_cast<size_t>(deg)].push_back(m);
            return;
        }
        int gd = gens_[i].degree;
        for (int e = 0; deg + e * gd <= dimension_; ++e) {
            m[i] = e;
            enumerate(m, i + 1, deg + e * gd);
        }
        m[i] = 0;
    }

    // Exhaustive check on all monomials up to top degree: reducing with any
    // applicable relation first, then normalizing, yields one normal form.
    void check_confluence() const {
        Monomial m(gens_.size(), 0);
        check_confluence_rec(m, 0, 0);
    }

    void check_confluence_rec(Monomial& m, size_t i, int deg) const {
        if (deg > dimension_) return;
        if (i == gens_.size()) {
            check_monomial_confluent(m);
            return;
        }
        int gd = gens_[i].degree;
        for (int e = 0; deg + e * gd <= dimension_; ++e) {
            m[i] = e;
            check_confluence_rec(m, i + 1, deg + e * gd);
        }
        m[i] = 0;
    }

    void check_monomial_confluent(const Monomial& m) const {
        std::optional<std::map<Monomial, ParamPoly, MonoLess>> first;
        for (const auto& rel : rels_) {
            if (!divides(rel.lead, m)) continue;
            Monomial q(m.size());
            for (size_t i = 0; i < m.size(); ++i) q[i] = m[i] - rel.lead[i];
            std::map<Monomial, ParamPoly, MonoLess> out;
            for (const auto& [rm, rc] : rel.rhs) {
                Monomial nm(m.size());
                for (size_t i = 0; i < m.size(); ++i) nm[i] = rm[i] + q[i];
                reduce_into(nm, rc, out);
            }
            if (!first) {
                first = std::move(out);
            } else if (*first != out) {
                throw error("ring: ambiguous rewrite system at " + monomial_str(m));
            }
        }
    }

    Params params_;
    std::vector<Generator> gens_;
    std::vector<Relation> rels_;
    int dimension_;
    Monomial fundamental_;
    std::vector<std::vector<Monomial>> basis_;
};

inline RingElement RingElement::operator-() const {
    std::map<Monomial, ParamPoly, MonoLess> t;
    for (const auto& [m, c] : terms_) t[m] = -c;
    return RingElement(ring_, std::move(t));
}

inline RingElement& RingElement::operator+=(const RingElement& o) {
    if (ring_ != o.ring_) throw error("RingElement: owner mismatch");
    for (const auto& [m, c] : o.terms_) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

inline RingElement& RingElement::operator-=(const RingElement& o) { return *this += -o; }

inline RingElement operator*(const RingElement& a, const RingElement& b) {
    if (a.ring_ != b.ring_) throw error("RingElement: owner mismatch");
    std::map<Monomial, ParamPoly, MonoLess> out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            a.ring_->reduce_into(m, ca * cb, out);
        }
    return RingElement(a.ring_, std::move(out));
}

inline RingElement RingElement::operator*(const ParamPoly& c) const {
    std::map<Monomial, ParamPoly, MonoLess> t;
    for (const auto& [m, v] : terms_) {
        ParamPoly p = v * c;
        if (!p.is_zero()) t[m] = std::move(p);
    }
    return RingElement(ring_, std::move(t));
}

inline RingElement RingElement::operator*(const Rational& c) const {
    return *this * ParamPoly::constant(ring_->params(), c);
}

inline RingElement RingElement::pow(int k) const {
    if (k < 0) throw error("RingElement: negative power");
    RingElement r = ring_->one();
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

inline bool RingElement::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = ring_->monomial_degree(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (ring_->monomial_degree(m) != d) return false;
    return true;
}

inline int RingElement::degree() const {
    if (terms_.empty()) return 0;
    if (!is_homogeneous()) throw error("RingElement: not homogeneous");
    return ring_->monomial_degree(terms_.begin()->first);
}

inline std::string RingElement::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")*" + ring_->monomial_str(m);
    }
    return s;
}

} // namespace chow

#endif
