#include "cyldec/surface.hpp"

#include "cyldec/error.hpp"
#include "cyldec/polygons.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace cyldec {

namespace {

QuadNum word_length(const CylinderSurface& s, const std::vector<int>& w) {
    QuadNum l(0);
    for (int id : w)
        l += s.lengths[id];
    return l;
}

bool congruent(const QuadNum& x, const QuadNum& y, const QuadNum& m) { return mod(x - y, m).is_zero(); }

// Where each saddle connection sits: cylinder above/below and x-positions.
struct Placement {
    std::vector<int> above, below;
    std::vector<QuadNum> xbottom; // left end in the bottom frame of the cylinder above
    std::vector<QuadNum> xtop;    // left end in the frame of the cylinder below (twist included)
    std::vector<int> ibottom, itop;

    explicit Placement(const CylinderSurface& s) {
        int S = s.saddle_count();
        above.assign(S, -1);
        below.assign(S, -1);
        xbottom.assign(S, QuadNum(0));
        xtop.assign(S, QuadNum(0));
        ibottom.assign(S, -1);
        itop.assign(S, -1);
        for (int i = 0; i < s.cylinder_count(); ++i) {
            const auto& cy = s.cylinders[i];
            QuadNum x(0);
            for (std::size_t j = 0; j < cy.bottom.size(); ++j) {
                int id = cy.bottom[j];
                above[id] = i;
                xbottom[id] = x;
                ibottom[id] = static_cast<int>(j);
                x += s.lengths[id];
            }
            x = cy.t;
            for (std::size_t j = 0; j < cy.top.size(); ++j) {
                int id = cy.top[j];
                below[id] = i;
                xtop[id] = x;
                itop[id] = static_cast<int>(j);
                x += s.lengths[id];
            }
        }
    }
};

} // namespace

CylinderSurface validate_surface(CylinderSurface s) {
    int S = s.saddle_count();
    if (s.cylinders.empty())
        throw Error(ErrorCode::InvalidSurface, "no cylinders");
    std::int64_t D = s.D;
    for (const auto& l : s.lengths) {
        if (l.sign() <= 0)
            throw Error(ErrorCode::InvalidSurface, "saddle connection of non-positive length");
        D = common_discriminant(D, l.D());
    }
    std::vector<int> in_top(S, 0), in_bottom(S, 0);
    for (auto& cy : s.cylinders) {
        for (const QuadNum* v : {&cy.c, &cy.h, &cy.t})
            D = common_discriminant(D, v->D());
        for (int id : cy.top) {
            if (id < 0 || id >= S)
                throw Error(ErrorCode::InvalidSurface, "saddle id out of range");
            in_top[id]++;
        }
        for (int id : cy.bottom) {
            if (id < 0 || id >= S)
                throw Error(ErrorCode::InvalidSurface, "saddle id out of range");
            in_bottom[id]++;
        }
        if (cy.top.empty() || cy.bottom.empty())
            throw Error(ErrorCode::InvalidSurface, "empty boundary word");
        if (cy.h.sign() <= 0)
            throw Error(ErrorCode::NonPositiveHeight, "height " + to_string(cy.h));
        QuadNum lt = word_length(s, cy.top), lb = word_length(s, cy.bottom);
        if (lt != lb)
            throw Error(ErrorCode::LengthMismatch, "top " + to_string(lt) + " vs bottom " + to_string(lb));
        if (cy.c != lt)
            throw Error(ErrorCode::LengthMismatch, "circumference " + to_string(cy.c) + " vs words " + to_string(lt));
    }
    for (int id = 0; id < S; ++id)
        if (in_top[id] != 1 || in_bottom[id] != 1)
            throw Error(ErrorCode::InvalidSurface,
                        "saddle connection " + std::to_string(id) + " must appear once on a top and once on a bottom");
    s.D = D;
    for (auto& cy : s.cylinders)
        cy.t = mod(cy.t, cy.c);
    return s;
}

std::vector<int> Singularities::order() const {
    std::vector<int> k;
    for (int j : junctions)
        k.push_back(j / 2 - 1);
    return k;
}

Singularities singularities(const CylinderSurface& s) {
    int S = s.saddle_count();
    std::vector<int> parent(2 * S);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto join_word = [&](const std::vector<int>& w) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            int a = find(2 * w[j] + 1), b = find(2 * w[(j + 1) % w.size()]);
            parent[a] = b;
        }
    };
    for (const auto& cy : s.cylinders) {
        join_word(cy.top);
        join_word(cy.bottom);
    }
    Singularities out;
    std::map<int, int> label;
    for (int code = 0; code < 2 * S; ++code) {
        int r = find(code);
        if (!label.count(r))
            label[r] = out.count++;
    }
    out.left.resize(S);
    out.right.resize(S);
    for (int id = 0; id < S; ++id) {
        out.left[id] = label[find(2 * id)];
        out.right[id] = label[find(2 * id + 1)];
    }
    out.junctions.assign(out.count, 0);
    for (const auto& cy : s.cylinders) {
        for (int id : cy.top)
            out.junctions[out.right[id]]++;
        for (int id : cy.bottom)
            out.junctions[out.right[id]]++;
    }
    return out;
}

namespace {
int word_singularity(const Singularities& sg, const std::vector<int>& w) {
    int x = sg.left[w[0]];
    for (int id : w)
        if (sg.left[id] != x || sg.right[id] != x)
            return -1;
    return x;
}
} // namespace

int bottom_singularity(const CylinderSurface& s, int cyl) {
    return word_singularity(singularities(s), s.cylinders.at(cyl).bottom);
}

int top_singularity(const CylinderSurface& s, int cyl) {
    return word_singularity(singularities(s), s.cylinders.at(cyl).top);
}

bool is_stable(const CylinderSurface& s) {
    auto sg = singularities(s);
    for (const auto& cy : s.cylinders)
        if (word_singularity(sg, cy.top) < 0 || word_singularity(sg, cy.bottom) < 0)
            return false;
    return true;
}

int topological_genus(const CylinderSurface& s) {
    int V = singularities(s).count;
    int E = s.saddle_count();
    return (2 - V + E) / 2;
}

QuadNum area(const CylinderSurface& s) {
    QuadNum a(0);
    for (const auto& cy : s.cylinders)
        a += cy.c * cy.h;
    return a;
}

StratumSignature stratum_signature(const CylinderSurface& s) {
    auto sg = singularities(s);
    StratumSignature out;
    for (int k : sg.order()) {
        if (k == 0)
            throw Error(ErrorCode::ZeroOrderSingularity, "surface has a marked point (cone angle 2pi)");
        out.kappa.push_back(k);
    }
    std::sort(out.kappa.rbegin(), out.kappa.rend());
    int sum = std::accumulate(out.kappa.begin(), out.kappa.end(), 0);
    out.genus = (sum + 2) / 2;
    return out;
}

CylinderSurface build_surface(const SeparatrixDiagram& d, const std::vector<QuadNum>& heights,
                              const std::vector<QuadNum>& twists) {
    if (d.metric.empty())
        throw Error(ErrorCode::InvalidMetric, "build_surface needs a metric");
    if (heights.size() != d.pairing.size() || twists.size() != d.pairing.size())
        throw Error(ErrorCode::DimensionMismatch, "one height and twist per cylinder");
    const auto& p = d.prediagram;
    auto comps = cylinder_components(p);
    auto var = edge_pair_index(p);
    CylinderSurface s;
    s.lengths.assign(edge_pair_count(p), QuadNum(0));
    for (int e = 0; e < p.size(); ++e)
        s.lengths[var[e]] = d.metric[e];
    for (std::size_t i = 0; i < d.pairing.size(); ++i) {
        auto [a, b] = d.pairing[i];
        Cylinder cy;
        for (int e : comps[a].edges)
            cy.top.push_back(var[e]);
        for (int e : comps[b].edges)
            cy.bottom.push_back(var[e]);
        std::reverse(cy.bottom.begin(), cy.bottom.end());
        cy.h = heights[i];
        if (cy.h.sign() <= 0)
            throw Error(ErrorCode::NonPositiveHeight, "cylinder " + std::to_string(i));
        cy.t = twists[i];
        cy.c = word_length(s, cy.top);
        s.cylinders.push_back(cy);
    }
    return validate_surface(s);
}

CylinderSurface build_surface(const SeparatrixDiagram& d) {
    std::vector<QuadNum> h(d.pairing.size(), QuadNum(1)), t(d.pairing.size(), QuadNum(0));
    return build_surface(d, h, t);
}

SeparatrixDiagram horizontal_diagram(const CylinderSurface& s) {
    int S = s.saddle_count();
    Placement pl(s);
    Prediagram p;
    p.sigma.assign(2 * S, -1);
    p.tau.assign(2 * S, -1);
    p.positive.assign(2 * S, false);
    for (int id = 0; id < S; ++id) {
        p.tau[2 * id] = 2 * id + 1;
        p.tau[2 * id + 1] = 2 * id;
        p.positive[2 * id] = true;
        const auto& up = s.cylinders[pl.above[id]].bottom;
        int prev = up[(pl.ibottom[id] + up.size() - 1) % up.size()];
        p.sigma[2 * id] = 2 * prev + 1;
        const auto& down = s.cylinders[pl.below[id]].top;
        int next = down[(pl.itop[id] + 1) % down.size()];
        p.sigma[2 * id + 1] = 2 * next;
    }
    p = validate_prediagram(p.sigma, p.tau, p.positive);
    auto comps = cylinder_components(p);
    std::vector<int> comp_of(2 * S);
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (int e : comps[i].edges)
            comp_of[e] = static_cast<int>(i);
    Pairing m;
    for (const auto& cy : s.cylinders)
        m.emplace_back(comp_of[2 * cy.top[0]], comp_of[2 * cy.bottom[0] + 1]);
    std::vector<QuadNum> metric(2 * S);
    for (int id = 0; id < S; ++id)
        metric[2 * id] = metric[2 * id + 1] = s.lengths[id];
    return validate_diagram(p, m, metric);
}

MixedStructure mixed_structure(const CylinderSurface& s) {
    auto sg = singularities(s);
    if (sg.count > 2)
        throw Error(ErrorCode::MoreThanTwoSingularities, std::to_string(sg.count) + " singularities");
    int m = s.cylinder_count();
    std::vector<int> bot(m), top(m);
    for (int i = 0; i < m; ++i) {
        bot[i] = word_singularity(sg, s.cylinders[i].bottom);
        top[i] = word_singularity(sg, s.cylinders[i].top);
        if (bot[i] < 0 || top[i] < 0)
            throw Error(ErrorCode::NotStable, "cylinder " + std::to_string(i) + " boundary meets both singularities");
    }
    MixedStructure ms;
    ms.delta.assign(m, 0);
    if (sg.count == 1)
        ms.one_singularity = true;
    else {
        ms.sing1 = 0;
        for (int i = 0; i < m; ++i)
            if (bot[i] != top[i]) {
                ms.sing1 = bot[i];
                break;
            }
        ms.sing2 = 1 - ms.sing1;
        for (int i = 0; i < m; ++i)
            if (bot[i] != top[i])
                ms.delta[i] = bot[i] == ms.sing1 ? 1 : -1;
    }
    for (int i = 0; i < m; ++i) {
        const auto& cy = s.cylinders[i];
        ms.u.push_back(QuadNum(ms.delta[i]) / cy.c);
        ms.mu.push_back(cy.h / cy.c);
        (ms.delta[i] > 0 ? ms.plus : ms.delta[i] < 0 ? ms.minus : ms.nonmixed).push_back(i);
    }
    auto split = [&](const std::vector<int>& cls, std::vector<int>& low, std::vector<int>& rest) {
        if (cls.empty())
            return;
        QuadNum hmin = s.cylinders[cls[0]].h;
        for (int i : cls)
            if (s.cylinders[i].h < hmin)
                hmin = s.cylinders[i].h;
        for (int i : cls)
            (s.cylinders[i].h == hmin ? low : rest).push_back(i);
    };
    split(ms.plus, ms.plus0, ms.plus1);
    split(ms.minus, ms.minus0, ms.minus1);
    return ms;
}

CylinderSurface twist_deform(const CylinderSurface& s, const std::vector<QuadNum>& x) {
    if (static_cast<int>(x.size()) != s.cylinder_count())
        throw Error(ErrorCode::DimensionMismatch, "one twist coefficient per cylinder");
    CylinderSurface out = s;
    for (int i = 0; i < s.cylinder_count(); ++i) {
        auto& cy = out.cylinders[i];
        cy.t = mod(cy.t + x[i] * cy.c, cy.c);
    }
    return validate_surface(out);
}

CylinderSurface rel_deform(const CylinderSurface& s, const QuadNum& t, RelAxis axis, bool surgery, int step_cap) {
    if (singularities(s).count != 2)
        throw Error(ErrorCode::NotTwoSingularities, "Rel needs exactly two singularities");
    auto ms = mixed_structure(s);
    CylinderSurface out = s;
    bool collapse = false;
    for (int i = 0; i < s.cylinder_count(); ++i) {
        auto& cy = out.cylinders[i];
        if (axis == RelAxis::Real)
            cy.t = mod(cy.t + t * QuadNum(ms.delta[i]), cy.c);
        else {
            cy.h = cy.h + t * QuadNum(ms.delta[i]);
            if (cy.h.sign() <= 0)
                collapse = true;
        }
    }
    if (!collapse)
        return validate_surface(out);
    if (!surgery)
        throw Error(ErrorCode::HeightCollapse, "a cylinder height reaches zero; enable surgery to cross the wall");
    return rel_surgery(s, Vec2{QuadNum(0), t}, step_cap);
}

CylinderSurface rotate_pi(const CylinderSurface& s) {
    CylinderSurface out = s;
    for (auto& cy : out.cylinders) {
        std::vector<int> nb(cy.top.rbegin(), cy.top.rend());
        std::vector<int> nt(cy.bottom.rbegin(), cy.bottom.rend());
        cy.bottom = nb;
        cy.top = nt;
    }
    return validate_surface(out);
}

std::vector<TranslationMap> translation_isomorphisms(const CylinderSurface& a, const CylinderSurface& b,
                                                     bool first_only) {
    std::vector<TranslationMap> out;
    if (a.cylinder_count() != b.cylinder_count() || a.saddle_count() != b.saddle_count())
        return out;
    Placement pa(a), pb(b);
    int m = a.cylinder_count(), S = a.saddle_count();
    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;

    auto attempt = [&](int j, int r) -> std::optional<TranslationMap> {
        TranslationMap tm;
        tm.cylinder.assign(m, -1);
        tm.saddle.assign(S, -1);
        tm.offset.assign(m, QuadNum(0));
        std::vector<int> cyl_used(m, 0), sad_used(S, 0);
        const auto& c0 = a.cylinders[0];
        const auto& cj = b.cylinders[j];
        if (c0.c != cj.c || c0.h != cj.h)
            return std::nullopt;
        tm.cylinder[0] = j;
        cyl_used[j] = 1;
        tm.offset[0] = mod(pb.xbottom[cj.bottom[r]] - pa.xbottom[c0.bottom[0]], c0.c);
        std::vector<int> queue{0};
        auto set_saddle = [&](int s, int img) {
            if (tm.saddle[s] >= 0)
                return tm.saddle[s] == img;
            if (sad_used[img] || a.lengths[s] != b.lengths[img])
                return false;
            tm.saddle[s] = img;
            sad_used[img] = 1;
            return true;
        };
        auto set_cyl = [&](int i, int img, const QuadNum& off) {
            const auto& ci = a.cylinders[i];
            if (tm.cylinder[i] >= 0)
                return tm.cylinder[i] == img && congruent(tm.offset[i], off, ci.c);
            if (cyl_used[img] || ci.c != b.cylinders[img].c || ci.h != b.cylinders[img].h)
                return false;
            tm.cylinder[i] = img;
            cyl_used[img] = 1;
            tm.offset[i] = mod(off, ci.c);
            queue.push_back(i);
            return true;
        };
        for (std::size_t q = 0; q < queue.size(); ++q) {
            int i = queue[q];
            const auto& ci = a.cylinders[i];
            const auto& cb = b.cylinders[tm.cylinder[i]];
            for (int s : ci.bottom) {
                QuadNum x = pa.xbottom[s] + tm.offset[i];
                int img = -1;
                for (int u : cb.bottom)
                    if (congruent(pb.xbottom[u], x, ci.c))
                        img = u;
                if (img < 0 || !set_saddle(s, img))
                    return std::nullopt;
                int below = pa.below[s];
                if (!set_cyl(below, pb.below[img], pb.xtop[img] - pa.xtop[s]))
                    return std::nullopt;
            }
            for (int s : ci.top) {
                QuadNum x = pa.xtop[s] + tm.offset[i];
                int img = -1;
                for (int u : cb.top)
                    if (congruent(pb.xtop[u], x, ci.c))
                        img = u;
                if (img < 0 || !set_saddle(s, img))
                    return std::nullopt;
                int above = pa.above[s];
                if (!set_cyl(above, pb.above[img], pb.xbottom[img] - pa.xbottom[s]))
                    return std::nullopt;
            }
        }
        for (int i = 0; i < m; ++i)
            if (tm.cylinder[i] < 0)
                return std::nullopt;
        for (int s = 0; s < S; ++s)
            if (tm.saddle[s] < 0)
                return std::nullopt;
        return tm;
    };

    for (int j = 0; j < m; ++j)
        for (int r = 0; r < static_cast<int>(b.cylinders[j].bottom.size()); ++r) {
            auto tm = attempt(j, r);
            if (!tm || !seen.insert({tm->cylinder, tm->saddle}).second)
                continue;
            out.push_back(*tm);
            if (first_only)
                return out;
        }
    return out;
}

bool translation_equivalent(const CylinderSurface& a, const CylinderSurface& b) {
    return !translation_isomorphisms(a, b, true).empty();
}

std::string format_surface(const CylinderSurface& s) {
    std::ostringstream os;
    os << "D=" << s.D << "\n";
    auto word = [](const std::vector<int>& w) {
        std::string out = "[";
        for (std::size_t i = 0; i < w.size(); ++i)
            out += (i ? "," : "") + std::to_string(w[i]);
        return out + "]";
    };
    for (const auto& cy : s.cylinders)
        os << "c=" << cy.c << ";h=" << cy.h << ";t=" << cy.t << ";top=" << word(cy.top)
           << ";bottom=" << word(cy.bottom) << "\n";
    for (int id = 0; id < s.saddle_count(); ++id)
        os << "l" << id << "=" << s.lengths[id] << "\n";
    return os.str();
}

CylinderSurface parse_surface(const std::string& text) {
    CylinderSurface s;
    std::istringstream in(text);
    std::string line;
    std::map<int, QuadNum> lengths;
    bool have_header = false;
    auto ids = [](const std::string& v) {
        std::vector<int> out;
        std::string body = v;
        if (body.size() < 2 || body.front() != '[' || body.back() != ']')
            throw Error(ErrorCode::ParseError, "word must be [..]: " + v);
        std::stringstream ss(body.substr(1, body.size() - 2));
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(std::stoi(item));
        return out;
    };
    while (std::getline(in, line)) {
        line = line.substr(0, line.find('#'));
        line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
                   line.end());
        if (line.empty())
            continue;
        try {
            if (line.rfind("D=", 0) == 0) {
                s.D = std::stoll(line.substr(2));
                have_header = true;
            } else if (line.rfind("c=", 0) == 0) {
                Cylinder cy;
                std::stringstream ss(line);
                std::string field;
                int seen = 0;
                while (std::getline(ss, field, ';')) {
                    auto eq = field.find('=');
                    if (eq == std::string::npos)
                        throw Error(ErrorCode::ParseError, "bad cylinder field " + field);
                    std::string k = field.substr(0, eq), v = field.substr(eq + 1);
                    if (k == "c")
                        cy.c = parse_quadnum(v);
                    else if (k == "h")
                        cy.h = parse_quadnum(v);
                    else if (k == "t")
                        cy.t = parse_quadnum(v);
                    else if (k == "top")
                        cy.top = ids(v);
                    else if (k == "bottom")
                        cy.bottom = ids(v);
                    else
                        throw Error(ErrorCode::ParseError, "unknown cylinder field " + k);
                    ++seen;
                }
                if (seen != 5)
                    throw Error(ErrorCode::ParseError, "cylinder record needs c, h, t, top, bottom");
                s.cylinders.push_back(cy);
            } else if (line[0] == 'l') {
                auto eq = line.find('=');
                if (eq == std::string::npos)
                    throw Error(ErrorCode::ParseError, "bad length line " + line);
                lengths[std::stoi(line.substr(1, eq - 1))] = parse_quadnum(line.substr(eq + 1));
            } else
                throw Error(ErrorCode::ParseError, "unrecognized line: " + line);
        } catch (const std::invalid_argument&) {
            throw Error(ErrorCode::ParseError, "bad number in line: " + line);
        }
    }
    if (!have_header)
        throw Error(ErrorCode::ParseError, "missing D=<int> header");
    int S = static_cast<int>(lengths.size());
    for (int id = 0; id < S; ++id) {
        if (!lengths.count(id))
            throw Error(ErrorCode::ParseError, "missing length of saddle connection " + std::to_string(id));
        s.lengths.push_back(lengths[id]);
    }
    return validate_surface(s);
}

} // namespace cyldec
