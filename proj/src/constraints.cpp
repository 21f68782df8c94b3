#include "cyldec/constraints.hpp"

#include "cyldec/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cyldec {

namespace {

// Kernel of the 2 x n rational system given by the (a, b) coordinates.
std::vector<std::vector<Rational>> relation_basis(const std::vector<QuadNum>& v, int& rank) {
    int n = static_cast<int>(v.size());
    std::vector<std::vector<Rational>> M(2, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) {
        M[0][i] = v[i].a();
        M[1][i] = v[i].b();
    }
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < n && r < 2; ++c) {
        int piv = -1;
        for (int i = r; i < 2; ++i)
            if (M[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(M[r], M[piv]);
        Rational inv = 1 / M[r][c];
        for (auto& x : M[r])
            x *= inv;
        for (int i = 0; i < 2; ++i)
            if (i != r && M[i][c] != 0) {
                Rational f = M[i][c];
                for (int j = 0; j < n; ++j)
                    M[i][j] -= f * M[r][j];
            }
        pivots.push_back(c);
        ++r;
    }
    rank = r;
    std::vector<std::vector<Rational>> out;
    for (int c = 0; c < n; ++c) {
        if (std::find(pivots.begin(), pivots.end(), c) != pivots.end())
            continue;
        std::vector<Rational> p(n, Rational(0));
        p[c] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            p[pivots[k]] = -M[k][c];
        // clear denominators
        Integer l(1), g(0);
        for (const auto& x : p) {
            Integer d = boost::multiprecision::denominator(x);
            l = l / boost::multiprecision::gcd(l, d) * d;
        }
        for (auto& x : p) {
            x *= l;
            g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(x));
        }
        if (g > 1)
            for (auto& x : p)
                x /= g;
        out.push_back(p);
    }
    return out;
}

std::string vec_string(const std::vector<Rational>& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? "," : "") + to_string(p[i]);
    return s + ")";
}

QuadNum dot(const std::vector<Rational>& p, const std::vector<QuadNum>& v) {
    QuadNum r(0);
    for (std::size_t i = 0; i < p.size(); ++i)
        r += QuadNum(p[i]) * v[i];
    return r;
}

CheckResult result(const std::string& name, Verdict v, std::string witness = "", std::string note = "") {
    return CheckResult{name, v, std::move(witness), std::move(note)};
}

bool two_singularities(const CylinderSurface& s) { return singularities(s).count == 2; }

std::string cyl(int i) { return "cylinder " + std::to_string(i + 1); }

} // namespace

CommensurabilityPartition commensurability(const std::vector<QuadNum>& values) {
    std::int64_t D = 0;
    for (const auto& v : values) {
        if (v.is_zero())
            throw Error(ErrorCode::ZeroValue, "commensurability of a zero value");
        D = common_discriminant(D, v.D());
    }
    CommensurabilityPartition out;
    out.relations = relation_basis(values, out.degree);
    std::vector<int> cls(values.size(), -1);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (cls[i] >= 0)
            continue;
        cls[i] = static_cast<int>(out.classes.size());
        out.classes.push_back({static_cast<int>(i)});
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (cls[j] < 0 && commensurable(values[i], values[j])) {
                cls[j] = cls[i];
                out.classes.back().push_back(static_cast<int>(j));
            }
    }
    return out;
}

VSpace v_space(const CylinderSurface& s) {
    VSpace out;
    out.mixed = mixed_structure(s);
    out.u = out.mixed.u;
    out.mu = out.mixed.mu;
    out.relations = relation_basis(out.u, out.d);
    return out;
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Holds:
        return "holds";
    case Verdict::Violated:
        return "violated";
    case Verdict::NotApplicable:
        return "not-applicable";
    }
    return "?";
}

CheckResult check_rational_closure(const CylinderSurface& s) {
    const std::string name = "rational_closure";
    if (!two_singularities(s))
        return result(name, Verdict::NotApplicable, "", "needs exactly two singularities");
    auto V = v_space(s);
    if (V.d > 2)
        return result(name, Verdict::Violated, "d = " + std::to_string(V.d),
                      "span of u has dimension > 2: not in any proper rank-one locus");
    return result(name, Verdict::Holds, "", "d = " + std::to_string(V.d));
}

CheckResult check_equation_propagation(const CylinderSurface& s) {
    const std::string name = "equation_propagation";
    if (!two_singularities(s))
        return result(name, Verdict::NotApplicable, "", "needs exactly two singularities");
    auto V = v_space(s);
    if (V.d != 2)
        return result(name, Verdict::NotApplicable, "", "d = " + std::to_string(V.d));
    for (const auto& p : V.relations) {
        QuadNum r = dot(p, V.mu);
        if (!r.is_zero())
            return result(name, Verdict::Violated, "p = " + vec_string(p) + ", p.u = 0, p.mu = " + to_string(r));
    }
    return result(name, Verdict::Holds, "", std::to_string(V.relations.size()) + " relations checked");
}

CheckResult check_notmixed(const CylinderSurface& s) {
    const std::string name = "notmixed";
    if (!two_singularities(s))
        return result(name, Verdict::NotApplicable, "", "needs exactly two singularities");
    auto ms = mixed_structure(s);
    if (ms.nonmixed.empty())
        return result(name, Verdict::NotApplicable, "", "every cylinder is mixed");
    std::vector<int> mixed = ms.plus;
    mixed.insert(mixed.end(), ms.minus.begin(), ms.minus.end());
    std::sort(mixed.begin(), mixed.end());
    for (std::size_t a = 0; a < mixed.size(); ++a)
        for (std::size_t b = a + 1; b < mixed.size(); ++b) {
            const auto &ci = s.cylinders[mixed[a]].c, &cj = s.cylinders[mixed[b]].c;
            if (!commensurable(ci, cj))
                return result(name, Verdict::Violated,
                              cyl(mixed[a]) + " c = " + to_string(ci) + ", " + cyl(mixed[b]) + " c = " +
                                  to_string(cj) + ": ratio " + to_string(ci / cj) + " irrational",
                              cyl(ms.nonmixed[0]) + " is not mixed");
        }
    return result(name, Verdict::Holds, "", "mixed circumferences pairwise commensurable");
}

CheckResult check_noneq(const CylinderSurface& s) {
    const std::string name = "noneq";
    if (!two_singularities(s))
        return result(name, Verdict::NotApplicable, "", "needs exactly two singularities");
    auto V = v_space(s);
    if (V.d != 2)
        return result(name, Verdict::NotApplicable, "", "d = " + std::to_string(V.d));
    for (int i : V.mixed.plus)
        for (int j : V.mixed.minus) {
            const auto &ci = s.cylinders[i].c, &cj = s.cylinders[j].c;
            if (commensurable(ci, cj))
                return result(name, Verdict::Violated,
                              cyl(i) + " (+) and " + cyl(j) + " (-): c_i / c_j = " + to_string(ci / cj));
        }
    return result(name, Verdict::Holds);
}

CheckResult check_height(const CylinderSurface& s) {
    const std::string name = "height";
    if (!two_singularities(s))
        return result(name, Verdict::NotApplicable, "", "needs exactly two singularities");
    auto V = v_space(s);
    if (V.d != 2)
        return result(name, Verdict::NotApplicable, "", "d = " + std::to_string(V.d));
    for (const auto* cls : {&V.mixed.plus, &V.mixed.minus})
        for (std::size_t a = 0; a < cls->size(); ++a)
            for (std::size_t b = a + 1; b < cls->size(); ++b) {
                int i = (*cls)[a], j = (*cls)[b];
                const auto &X = s.cylinders[i], &Y = s.cylinders[j];
                bool comm = commensurable(X.c, Y.c);
                if (comm && X.h != Y.h)
                    return result(name, Verdict::Violated,
                                  cyl(i) + ", " + cyl(j) + " equivalent, c ratio " + to_string(X.c / Y.c) +
                                      " rational, heights " + to_string(X.h) + " != " + to_string(Y.h));
                if (!comm && X.h == Y.h)
                    return result(name, Verdict::Violated,
                                  cyl(i) + ", " + cyl(j) + " equivalent, equal heights " + to_string(X.h) +
                                      ", c ratio " + to_string(X.c / Y.c) + " irrational");
            }
    return result(name, Verdict::Holds);
}

CheckResult check_noneq_and_height(const CylinderSurface& s) {
    auto a = check_noneq(s);
    auto b = check_height(s);
    CheckResult out;
    out.name = "noneq_and_height";
    if (a.verdict == Verdict::Violated)
        return {out.name, Verdict::Violated, "noneq: " + a.witness, a.note};
    if (b.verdict == Verdict::Violated)
        return {out.name, Verdict::Violated, "height: " + b.witness, b.note};
    out.verdict = a.verdict == Verdict::Holds && b.verdict == Verdict::Holds ? Verdict::Holds : Verdict::NotApplicable;
    out.note = a.note;
    return out;
}

bool adjacent(const CylinderSurface& s, int i, int j) {
    if (i == j)
        return false;
    const auto &A = s.cylinders[i], &B = s.cylinders[j];
    auto meets = [](const std::vector<int>& x, const std::vector<int>& y) {
        for (int a : x)
            if (std::find(y.begin(), y.end(), a) != y.end())
                return true;
        return false;
    };
    return meets(A.top, B.bottom) || meets(A.bottom, B.top);
}

bool two_adjacent(const CylinderSurface& s, int i, int j) {
    if (i == j)
        return false;
    const auto &A = s.cylinders[i], &B = s.cylinders[j];
    auto meets = [](const std::vector<int>& x, const std::vector<int>& y) {
        for (int a : x)
            if (std::find(y.begin(), y.end(), a) != y.end())
                return true;
        return false;
    };
    return meets(A.top, B.bottom) && meets(A.bottom, B.top);
}

CheckResult check_adjacent(const CylinderSurface& s) {
    const std::string name = "adjacent";
    if (!two_singularities(s))
        return result(name, Verdict::NotApplicable, "", "needs exactly two singularities");
    auto V = v_space(s);
    if (V.d != 2)
        return result(name, Verdict::NotApplicable, "", "d = " + std::to_string(V.d));
    const auto& ms = V.mixed;
    bool applied = false;
    std::string note;
    // the labelling of the two classes is a convention, so both orientations apply
    for (int sign : {+1, -1}) {
        const auto& low = sign > 0 ? ms.plus0 : ms.minus0;
        const auto& other_low = sign > 0 ? ms.minus0 : ms.plus0;
        const auto& high = sign > 0 ? ms.plus1 : ms.minus1;
        for (int p : low) {
            bool partner = false;
            for (int q : other_low)
                if (two_adjacent(s, p, q))
                    partner = true;
            bool touches_high = false;
            for (int r : high)
                if (adjacent(s, p, r))
                    touches_high = true;
            if (!partner || touches_high)
                continue;
            applied = true;
            note = cyl(p) + " satisfies the hypothesis";
            std::vector<QuadNum> gam;
            for (int r : high)
                gam.push_back(QuadNum(1) / s.cylinders[r].c);
            bool pairwise = true;
            for (std::size_t a = 0; a < gam.size(); ++a)
                for (std::size_t b = a + 1; b < gam.size(); ++b)
                    if (!commensurable(gam[a], gam[b]))
                        pairwise = false;
            if (pairwise)
                continue;
            // gamma_p = sum p_i gamma_i over the high class
            std::vector<QuadNum> sys = gam;
            QuadNum gp = QuadNum(1) / s.cylinders[p].c;
            sys.push_back(gp);
            int rank;
            auto rel = relation_basis(sys, rank);
            std::vector<Rational> coef;
            for (const auto& r : rel)
                if (r.back() != 0) {
                    for (std::size_t k = 0; k + 1 < r.size(); ++k)
                        coef.push_back(-r[k] / r.back());
                    break;
                }
            if (coef.empty())
                throw Error(ErrorCode::Internal, "gamma_p outside the span of the high class");
            QuadNum sum_mu(0);
            for (std::size_t k = 0; k < high.size(); ++k)
                sum_mu += QuadNum(coef[k]) * V.mu[high[k]];
            QuadNum h = s.cylinders[p].h;
            QuadNum eps_star = sum_mu / gp;
            QuadNum eps = h / QuadNum(2);
            if (eps == eps_star)
                eps = h / QuadNum(4);
            // (eps - h) gamma_p  versus  2 sum p_i mu_i - (h + eps) gamma_p
            QuadNum residue = (eps - h) * gp - (QuadNum(2) * sum_mu - (h + eps) * gp);
            std::ostringstream w;
            w << cyl(p) << " (" << (sign > 0 ? "+" : "-") << "), high class circumferences incommensurable; p = "
              << vec_string(coef) << ", eps forced to " << to_string(eps_star) << " (h_p = " << to_string(h)
              << "), residue at eps = " << to_string(eps) << ": " << to_string(residue);
            return result(name, Verdict::Violated, w.str(), note);
        }
    }
    if (!applied)
        return result(name, Verdict::NotApplicable, "", "no minimal-height cylinder meets the hypothesis");
    return result(name, Verdict::Holds, "", note);
}

FieldGenerators field_generators(const CylinderSurface& s, int base) {
    FieldGenerators out;
    const auto& cb = s.cylinders.at(base).c;
    for (int i = 0; i < s.cylinder_count(); ++i) {
        if (i == base)
            continue;
        QuadNum r = s.cylinders[i].c / cb;
        if (!r.is_rational())
            out.degree = 2;
        out.ratios.push_back(r);
    }
    return out;
}

CheckResult check_field_degree(const CylinderSurface& s) {
    auto fg = field_generators(s);
    return result("field_degree", Verdict::Holds, "",
                  "degree " + std::to_string(fg.degree) + (fg.degree == 1 ? " (arithmetic)" : ""));
}

bool ConstraintReport::any_violated() const {
    for (const auto& c : checks)
        if (c.verdict == Verdict::Violated)
            return true;
    return false;
}

ConstraintReport check_all(const CylinderSurface& s) {
    ConstraintReport r;
    if (two_singularities(s))
        r.d = v_space(s).d;
    r.checks = {check_rational_closure(s), check_equation_propagation(s), check_notmixed(s), check_noneq(s),
                check_height(s),           check_adjacent(s),             check_field_degree(s)};
    return r;
}

std::string format_report(const ConstraintReport& r) {
    std::ostringstream os;
    os << "d=" << r.d << "\n";
    for (const auto& c : r.checks) {
        os << c.name << ": " << verdict_name(c.verdict);
        if (!c.witness.empty())
            os << "; witness: " << c.witness;
        if (!c.note.empty())
            os << "; note: " << c.note;
        os << "\n";
    }
    return os.str();
}

} // namespace cyldec
