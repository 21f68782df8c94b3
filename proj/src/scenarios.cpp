// Scripted replays of the H(2,2) and H(3,1) arguments.  Each step either
// checks something with the library or is cited (not machine-checked).

#include "cyldec/constraints.hpp"
#include "cyldec/enumeration.hpp"
#include "cyldec/error.hpp"
#include "cyldec/polygons.hpp"

#include <algorithm>
#include <sstream>

namespace cyldec {

namespace {

class Replay {
public:
    explicit Replay(std::string name) { r_.name = std::move(name); }

    void step(const std::string& text) {
        r_.steps.push_back({static_cast<int>(r_.steps.size()) + 1, true, text});
    }
    void cite(const std::string& text) {
        r_.steps.push_back({static_cast<int>(r_.steps.size()) + 1, false, text});
    }
    void expect(bool ok, const std::string& what) {
        if (!ok)
            throw Error(ErrorCode::ScenarioAssertionFailed,
                        r_.name + " step " + std::to_string(r_.steps.size()) + ": " + what);
    }
    void note(const std::string& more) { r_.steps.back().text += "; " + more; }
    void keep(const std::string& name, const CylinderSurface& s) {
        r_.surface_names.push_back(name);
        r_.surfaces.push_back(s);
    }
    ScenarioResult done() { return std::move(r_); }

private:
    ScenarioResult r_;
};

QuadNum sqrt2() { return QuadNum::sqrt(2); }

bool same_up_to_sign(const std::vector<int>& delta, const std::vector<int>& want) {
    std::vector<int> neg(want.size());
    std::transform(want.begin(), want.end(), neg.begin(), [](int x) { return -x; });
    return delta == want || delta == neg;
}

std::string delta_text(const std::vector<int>& delta) {
    std::string out = "(";
    for (std::size_t i = 0; i < delta.size(); ++i) {
        if (i)
            out += ",";
        out += delta[i] > 0 ? "g" : delta[i] < 0 ? "-g" : "0";
        if (delta[i])
            out += std::to_string(i + 1);
    }
    return out + ")";
}

// Diagram of s, or its reversal, among the classes; -1 when absent.
int find_class(const Classification& c, const CylinderSurface& s) {
    auto d = horizontal_diagram(s);
    auto rd = reverse_orientation(d);
    for (std::size_t i = 0; i < c.entries.size(); ++i)
        if (diagrams_isomorphic(d, c.entries[i].diagram) || diagrams_isomorphic(rd, c.entries[i].diagram))
            return static_cast<int>(i);
    return -1;
}

// Twist v = a*mu + b*u chosen so that cylinders i, j move by di, dj.
std::vector<QuadNum> twist_for(const CylinderSurface& s, const MixedStructure& ms, int i, const QuadNum& di, int j,
                               const QuadNum& dj) {
    // a*h_i + b*delta_i = di, a*h_j + b*delta_j = dj
    QuadNum hi = s.cylinders[i].h, hj = s.cylinders[j].h;
    QuadNum ei(ms.delta[i]), ej(ms.delta[j]);
    QuadNum det = hi * ej - hj * ei;
    if (det.is_zero())
        throw Error(ErrorCode::Internal, "twist system is singular");
    QuadNum a = (di * ej - dj * ei) / det;
    QuadNum b = (hi * dj - hj * di) / det;
    std::vector<QuadNum> x;
    for (int k = 0; k < s.cylinder_count(); ++k)
        x.push_back((a * s.cylinders[k].h + b * QuadNum(ms.delta[k])) / s.cylinders[k].c);
    return x;
}

bool has_circumference(const CylinderSurface& s, const QuadNum& c) {
    for (const auto& cy : s.cylinders)
        if (cy.c == c)
            return true;
    return false;
}

std::string circumferences(const CylinderSurface& s) {
    std::string out;
    for (const auto& cy : s.cylinders)
        out += (out.empty() ? "" : ", ") + to_string(cy.c);
    return out;
}

// Decomposition A; saddle connections A..F are 0..5, cylinders bottom to top.
CylinderSurface surface_a() {
    QuadNum r = sqrt2();
    CylinderSurface s;
    s.D = 2;
    s.lengths = {QuadNum(1), QuadNum(1), r, 1 + r, 1 + r, r};
    s.cylinders = {
        {1 + r, QuadNum(1), QuadNum(0), {3}, {0, 2}},
        {2 + r, QuadNum(1), QuadNum(0), {0, 4}, {1, 3}},
        {1 + r, QuadNum(1), QuadNum(0), {1, 5}, {4}},
        {r, QuadNum(2), QuadNum(0), {2}, {5}},
    };
    return validate_surface(s);
}

// Decomposition B; saddle connections A, B, E, F, G, H are 0..5.
CylinderSurface surface_b(const std::vector<QuadNum>& t) {
    QuadNum r = sqrt2();
    CylinderSurface s;
    s.D = 2;
    s.lengths = {r, QuadNum(1), QuadNum(1), r, QuadNum(1), QuadNum(1)};
    s.cylinders = {
        {QuadNum(1), QuadNum(1), t[0], {2}, {4}},
        {2 + r, 2 + r, t[1], {3, 4, 5}, {0, 2, 1}},
        {r, 2 * r, t[2], {0}, {3}},
        {QuadNum(1), QuadNum(1), t[3], {1}, {5}},
    };
    return validate_surface(s);
}

// The H(3,1) surface; saddle connections A, B, C, D, E, X are 0..5.
CylinderSurface surface_x(const QuadNum& lA) {
    CylinderSurface s;
    s.D = lA.D();
    s.lengths = {lA, QuadNum(1), QuadNum(1), QuadNum(1), QuadNum(1), QuadNum(2)};
    s.cylinders = {
        {QuadNum(1), QuadNum(1), QuadNum(0), {1}, {3}},
        {lA + 2, QuadNum(1), QuadNum(0), {0, 5}, {0, 1, 2}},
        {QuadNum(2), QuadNum(1), QuadNum(Rational(1, 2)), {4, 3}, {5}},
        {QuadNum(1), QuadNum(1), QuadNum(0), {2}, {4}},
    };
    return validate_surface(s);
}

ScenarioResult h22() {
    Replay R("h22_theorem");
    QuadNum r = sqrt2();

    R.step("classify H(2,2) (mixed filter); decompositions A and B are classes of the odd component");
    auto cls = classify_stratum(parse_profile("2,2"), {true, true, 1});
    CylinderSurface XA = surface_a();
    CylinderSurface XB0 = surface_b({QuadNum(0), QuadNum(0), QuadNum(0), QuadNum(0)});
    int ia = find_class(cls, XA), ib = find_class(cls, XB0);
    R.expect(ia >= 0, "decomposition A not among the classes");
    R.expect(ib >= 0, "decomposition B not among the classes");
    R.expect(cls.entries[ia].component_label == "odd", "A is not labeled odd");
    R.expect(cls.entries[ib].component_label == "odd", "B is not labeled odd");
    R.expect(spin_parity(XA) == 1 && spin_parity(XB0) == 1, "spin parity of A or B is even");
    R.note("A is class " + std::to_string(cls.entries[ia].class_id) + ", B is class " +
           std::to_string(cls.entries[ib].class_id));

    R.step("X_A with lA = lB = 1, lC = sqrt2: u = (g1,-g2,g3,-g4) and non-equivalent mixed cylinders are "
           "incommensurable");
    auto VA = v_space(XA);
    R.expect(same_up_to_sign(VA.mixed.delta, {1, -1, 1, -1}), "u = " + delta_text(VA.mixed.delta));
    R.expect(VA.d == 2, "d = " + std::to_string(VA.d));
    R.expect(check_noneq(XA).verdict == Verdict::Holds, "noneq check does not hold");
    R.keep("X_A", XA);

    R.step("twist by v = a*mu + b*u to t2 = c2 - lA, t3 = 0; a vertical saddle connection of length h2 + h3 "
           "joins the zero to itself");
    auto ta = twist_for(XA, VA.mixed, 1, -XA.lengths[0], 2, QuadNum(0));
    CylinderSurface TA = twist_deform(XA, ta);
    R.expect(TA.cylinders[1].t == TA.cylinders[1].c - TA.lengths[0], "t2 != c2 - lA");
    R.expect(TA.cylinders[2].t.is_zero(), "t3 != 0");
    auto P = to_polygons(TA);
    auto labels = vertex_singularities(TA);
    // cylinder 2, bottom word [B, D]: vertex 1 is the right end of B
    auto ray = trace_ray(P, 1, 1, Vec2{QuadNum(0), QuadNum(1)});
    R.expect(ray.has_value(), "vertical ray from the zero does not close up");
    QuadNum want = TA.cylinders[1].h + TA.cylinders[2].h;
    R.expect(ray->length == want, "saddle connection length " + to_string(ray->length));
    R.expect(labels[ray->poly][ray->vertex] == labels[1][1], "saddle connection changes zero");
    R.note("length " + to_string(ray->length));
    R.keep("X_A twisted", TA);

    R.cite("periodicity of the vertical direction and the cone-angle 3pi argument exclude A; only B survives");

    R.step("X_B with c1 = c4 = 1, c3 = sqrt2, c2 = 2 + sqrt2, h1 = h4 = 1, h2 = 2 + sqrt2, h3 = 2 sqrt2: "
           "u = (g1,-g2,g3,g4), d = 2, cylinders 1 and 4 form the minimal class, height check holds");
    // initial twists t1 = t4 = 1/3, t2 = 1/5; t3 chosen so that it ends at c3 / 2
    std::vector<QuadNum> t0 = {QuadNum(Rational(1, 3)), QuadNum(Rational(1, 5)), QuadNum(0), QuadNum(Rational(1, 3))};
    auto MB = mixed_structure(surface_b(t0));
    auto probe = twist_for(surface_b(t0), MB, 0, -t0[0], 1, -t0[1]);
    QuadNum dt3 = probe[2] * r;
    t0[2] = mod(r / 2 - dt3, r);
    CylinderSurface XB = surface_b(t0);
    auto VB = v_space(XB);
    R.expect(same_up_to_sign(VB.mixed.delta, {1, -1, 1, 1}), "u = " + delta_text(VB.mixed.delta));
    R.expect(VB.d == 2, "d = " + std::to_string(VB.d));
    {
        auto c0 = VB.mixed.delta[0] > 0 ? VB.mixed.plus0 : VB.mixed.minus0;
        std::sort(c0.begin(), c0.end());
        R.expect(c0 == std::vector<int>{0, 3}, "minimal class is not {1, 4}");
    }
    R.expect(check_height(XB).verdict == Verdict::Holds, "height check does not hold");
    R.keep("X_B", XB);

    R.step("twist by v with v1 = -t1/c1, v2 = -t2/c2: t1 = t2 = t4 = 0, t3 = c3/2");
    CylinderSurface TB = twist_deform(XB, twist_for(XB, VB.mixed, 0, -XB.cylinders[0].t, 1, -XB.cylinders[1].t));
    R.expect(TB.cylinders[0].t.is_zero() && TB.cylinders[1].t.is_zero() && TB.cylinders[3].t.is_zero(),
             "t1, t2, t4 not all zero");
    R.expect(TB.cylinders[2].t == r / 2, "t3 = " + to_string(TB.cylinders[2].t));
    R.keep("X_B twisted", TB);

    R.step("vertical direction: three cylinders (h1+h2, c1), (h2+h4, c4), (2(h2+h3), c3/2)");
    auto V = decompose_direction(to_polygons(TB), Vec2{QuadNum(0), QuadNum(1)});
    R.expect(V.has_value(), "vertical direction not periodic");
    {
        const auto& c = TB.cylinders;
        std::vector<std::pair<QuadNum, QuadNum>> want3 = {
            {c[0].h + c[1].h, c[0].c}, {c[1].h + c[3].h, c[3].c}, {2 * (c[1].h + c[2].h), c[2].c / 2}};
        std::vector<std::pair<QuadNum, QuadNum>> got;
        for (const auto& cy : V->cylinders)
            got.push_back({cy.c, cy.h});
        R.expect(got.size() == 3, std::to_string(got.size()) + " vertical cylinders");
        for (const auto& w : want3) {
            auto it = std::find(got.begin(), got.end(), w);
            R.expect(it != got.end(), "no vertical cylinder (" + to_string(w.first) + ", " + to_string(w.second) + ")");
            got.erase(it);
        }
    }
    R.keep("X_B vertical", *V);

    R.step("an involution with derivative -Id: quotient genus 1, swaps the zeros, exchanges cylinders 1 and 4, "
           "fixes 2 and 3");
    auto invs = neg_involutions(TB);
    R.expect(!invs.empty(), "no involution");
    R.expect(invs.front().quotient_genus == 1, "smallest quotient genus " + std::to_string(invs.front().quotient_genus));
    bool found = false;
    for (const auto& inv : invs)
        if (inv.quotient_genus == 1 && inv.swaps_singularities && inv.cylinder == std::vector<int>{3, 1, 2, 0})
            found = true;
    R.expect(found, "no involution with the expected action");

    R.cite("the Prym eigenform locus is the only rank-one locus containing X_B");
    return R.done();
}

ScenarioResult h31() {
    Replay R("h31_theorem");

    R.step("classify H(3,1) (quotient by -omega, mixed filter): 7 classes");
    auto cls = classify_stratum(parse_profile("3,1"), {true, true, 1});
    R.expect(cls.entries.size() == 7, std::to_string(cls.entries.size()) + " classes");
    CylinderSurface X = surface_x(QuadNum::sqrt(2));
    R.expect(find_class(cls, X) >= 0, "X not among the classes");

    R.step("X with lA = sqrt2, unit heights, t3 = 1/2: u = (g1,0,-g3,g4), non-mixed check holds, field degree 2");
    auto VX = v_space(X);
    R.expect(same_up_to_sign(VX.mixed.delta, {1, 0, -1, 1}), "u = " + delta_text(VX.mixed.delta));
    R.expect(check_notmixed(X).verdict == Verdict::Holds, "non-mixed check does not hold on X");
    R.expect(field_generators(X).degree == 2, "field degree is not 2");
    R.keep("X", X);

    R.step("Y = Rel by i(h3 + 1/10) through the wall: the non-mixed cylinder persists and the non-mixed check fails");
    QuadNum tt = X.cylinders[2].h + QuadNum(Rational(1, 10));
    CylinderSurface Y = rel_deform(X, tt, RelAxis::Imaginary, true);
    R.note("Y circumferences " + circumferences(Y));
    R.expect(has_circumference(Y, X.cylinders[1].c), "cylinder 2 does not persist");
    R.expect(check_notmixed(Y).verdict == Verdict::Violated, "non-mixed check is not violated on Y");
    R.keep("Y", Y);

    R.step("with lA = 1 (rational lengths) cylinders 2 and 3 both persist and Y passes the non-mixed check");
    CylinderSurface X1 = surface_x(QuadNum(1));
    CylinderSurface Y1 = rel_deform(X1, X1.cylinders[2].h + QuadNum(Rational(1, 10)), RelAxis::Imaginary, true);
    R.note("Y circumferences " + circumferences(Y1));
    R.expect(has_circumference(Y1, X1.cylinders[1].c), "cylinder 2 does not persist");
    R.expect(has_circumference(Y1, X1.cylinders[2].c), "cylinder 3 does not persist");
    R.expect(check_notmixed(Y1).verdict == Verdict::Holds, "non-mixed check does not hold");
    R.expect(field_generators(Y1).degree == 1, "field degree is not 1");
    R.keep("X (lA = 1)", X1);
    R.keep("Y (lA = 1)", Y1);

    R.cite("the remaining decompositions of H(3,1) are excluded the same way");
    return R.done();
}

} // namespace

std::string ScenarioResult::format_log() const {
    std::ostringstream os;
    os << "scenario " << name << "\n";
    for (const auto& st : steps)
        os << "  [" << st.index << "] " << (st.checked ? "checked" : "cited") << ": " << st.text << "\n";
    return os.str();
}

std::vector<std::string> scenario_names() { return {"h22_theorem", "h31_theorem"}; }

ScenarioResult replay_scenario(const std::string& name) {
    if (name == "h22_theorem")
        return h22();
    if (name == "h31_theorem")
        return h31();
    throw Error(ErrorCode::UnknownScenario, "no scenario '" + name + "'");
}

} // namespace cyldec
