#include "cyldec/cli.hpp"

#include "cyldec/constraints.hpp"
#include "cyldec/error.hpp"
#include "cyldec/polygons.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <queue>
#include <sstream>

#ifndef CYLDEC_GOLDEN_DIR
#define CYLDEC_GOLDEN_DIR "data/golden"
#endif

namespace cyldec {

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes to path, or to out when path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot write " + path);
    f << text;
    if (!f)
        throw IoError("write failed: " + path);
}

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<QuadNum> parse_list(const std::string& text) {
    std::vector<QuadNum> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_quadnum(trim(item)));
    return out;
}

std::string letter(int id) {
    std::string s(1, static_cast<char>('A' + id % 26));
    if (id >= 26)
        s += std::to_string(id / 26);
    return s;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s == "-0.00")
        s = "0.00";
    return s;
}

nlohmann::json types_json(const std::vector<MinimalType>& types) {
    auto j = nlohmann::json::array();
    for (const auto& t : types)
        j.push_back(type_cycles(t));
    return j;
}

std::string component_counts(const std::vector<std::pair<std::string, int>>& counts) {
    std::string out;
    for (const auto& [name, n] : counts)
        out += (out.empty() ? "" : " / ") + std::to_string(n) + " " + name;
    return out.empty() ? "none" : out;
}

} // namespace

std::vector<GoldenEntry> parse_golden(const std::string& text) {
    std::vector<GoldenEntry> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        auto bar = t.find('|');
        if (bar == std::string::npos)
            throw Error(ErrorCode::ParseError, "golden line without '|': " + t);
        GoldenEntry e;
        e.component = trim(t.substr(0, bar));
        std::string rest = t.substr(bar + 1);
        auto hash = rest.find('#');
        if (hash != std::string::npos)
            e.comment = trim(rest.substr(hash + 1));
        e.diagram = parse_diagram(rest);
        out.push_back(std::move(e));
    }
    return out;
}

bool AppendixComparison::ok() const {
    return unmatched_computed.empty() && unmatched_golden.empty() && label_mismatches.empty();
}

std::string AppendixComparison::format() const {
    std::ostringstream os;
    int nc = 0, ng = 0;
    for (const auto& c : computed_counts)
        nc += c.second;
    for (const auto& c : golden_counts)
        ng += c.second;
    os << "computed: " << nc << " classes (" << component_counts(computed_counts) << ")\n";
    os << "golden:   " << ng << " entries (" << component_counts(golden_counts) << ")\n";
    for (int id : unmatched_computed)
        os << "+ class " << id << " not in the golden list\n";
    for (int k : unmatched_golden)
        os << "- golden entry " << k + 1 << " has no computed class\n";
    for (const auto& m : label_mismatches)
        os << "~ " << m << "\n";
    if (ok())
        os << nc << " classes: OK\n";
    else
        os << "MISMATCH\n";
    return os.str();
}

AppendixComparison compare_to_golden(const Classification& c, const std::vector<GoldenEntry>& golden) {
    AppendixComparison r;
    std::map<std::string, int> cc, gc;
    std::vector<char> used(golden.size(), 0);
    for (const auto& e : c.entries) {
        ++cc[e.component_label];
        auto rd = reverse_orientation(e.diagram);
        int hit = -1;
        for (std::size_t k = 0; k < golden.size() && hit < 0; ++k)
            if (!used[k] && (diagrams_isomorphic(e.diagram, golden[k].diagram) ||
                             diagrams_isomorphic(rd, golden[k].diagram)))
                hit = static_cast<int>(k);
        if (hit < 0) {
            r.unmatched_computed.push_back(e.class_id);
            continue;
        }
        used[hit] = 1;
        if (golden[hit].component != e.component_label)
            r.label_mismatches.push_back("class " + std::to_string(e.class_id) + " is " + e.component_label +
                                         ", golden entry " + std::to_string(hit + 1) + " (" + golden[hit].comment +
                                         ") says " + golden[hit].component);
    }
    for (std::size_t k = 0; k < golden.size(); ++k) {
        ++gc[golden[k].component];
        if (!used[k])
            r.unmatched_golden.push_back(static_cast<int>(k));
    }
    r.computed_counts.assign(cc.begin(), cc.end());
    r.golden_counts.assign(gc.begin(), gc.end());
    return r;
}

std::string surface_json(const CylinderSurface& s) {
    nlohmann::json j;
    j["D"] = s.D;
    j["lengths"] = nlohmann::json::array();
    for (const auto& l : s.lengths)
        j["lengths"].push_back(to_string(l));
    j["cylinders"] = nlohmann::json::array();
    for (const auto& cy : s.cylinders)
        j["cylinders"].push_back({{"c", to_string(cy.c)},
                                  {"h", to_string(cy.h)},
                                  {"t", to_string(cy.t)},
                                  {"top", cy.top},
                                  {"bottom", cy.bottom}});
    return j.dump(2) + "\n";
}

std::string surface_svg(const CylinderSurface& s) {
    validate_surface(s);
    stratum_signature(s); // rejects tori and marked points
    auto sg = singularities(s);
    int m = s.cylinder_count(), S = s.saddle_count();
    std::vector<int> above(S), below(S);
    std::vector<QuadNum> boff(S), toff(S); // offsets in the bottom word / top word
    for (int i = 0; i < m; ++i) {
        const auto& cy = s.cylinders[i];
        QuadNum x(0);
        for (int id : cy.bottom) {
            above[id] = i;
            boff[id] = x;
            x += s.lengths[id];
        }
        x = QuadNum(0);
        for (int id : cy.top) {
            below[id] = i;
            toff[id] = x;
            x += s.lengths[id];
        }
    }
    // top mark of saddle id relative to the left side of its cylinder below
    auto top_x = [&](int id) { return mod(s.cylinders[below[id]].t + toff[id], s.cylinders[below[id]].c); };

    // place cylinders so that as many gluings as possible are drawn as shared edges
    std::vector<std::optional<std::pair<QuadNum, QuadNum>>> pos(m);
    for (int root = 0; root < m; ++root) {
        if (pos[root])
            continue;
        QuadNum y0(0);
        for (int i = 0; i < m; ++i)
            if (pos[i])
                y0 = std::max(y0, pos[i]->second + s.cylinders[i].h);
        if (root > 0)
            y0 += QuadNum(1);
        pos[root] = {QuadNum(0), y0};
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int i = q.front();
            q.pop();
            const auto& cy = s.cylinders[i];
            auto [x0, yy] = *pos[i];
            for (int id : cy.top) {
                int j = above[id];
                if (!pos[j]) {
                    pos[j] = {x0 + top_x(id) - boff[id], yy + cy.h};
                    q.push(j);
                }
            }
            for (int id : cy.bottom) {
                int j = below[id];
                if (!pos[j]) {
                    pos[j] = {x0 + boff[id] - top_x(id), yy - s.cylinders[j].h};
                    q.push(j);
                }
            }
        }
    }
    QuadNum xmin(0), ymin(0), xmax(0), ymax(0);
    for (int i = 0; i < m; ++i) {
        xmin = std::min(xmin, pos[i]->first);
        ymin = std::min(ymin, pos[i]->second);
        xmax = std::max(xmax, pos[i]->first + s.cylinders[i].c);
        ymax = std::max(ymax, pos[i]->second + s.cylinders[i].h);
    }
    const double scale = 80, margin = 30;
    double W = (xmax - xmin).to_double() * scale + 2 * margin;
    double H = (ymax - ymin).to_double() * scale + 2 * margin;
    auto X = [&](const QuadNum& x) { return fmt((x - xmin).to_double() * scale + margin); };
    auto Y = [&](const QuadNum& y) { return fmt((ymax - y).to_double() * scale + margin); };
    auto shared = [&](int id) {
        // the two sides of the saddle connection are drawn on top of each other
        const auto& lo = s.cylinders[below[id]];
        if (top_x(id) + s.lengths[id] > lo.c)
            return false;
        QuadNum xt = pos[below[id]]->first + top_x(id), yt = pos[below[id]]->second + lo.h;
        return xt == pos[above[id]]->first + boff[id] && yt == pos[above[id]]->second;
    };
    const char* glyph[] = {"&#215;", "&#8226;", "&#9675;", "&#9633;"};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(W) << "\" height=\"" << fmt(H)
       << "\" viewBox=\"0 0 " << fmt(W) << " " << fmt(H) << "\">\n";
    os << "<g fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n";
    for (int i = 0; i < m; ++i) {
        const auto& cy = s.cylinders[i];
        auto [x0, y0] = *pos[i];
        os << "<rect x=\"" << X(x0) << "\" y=\"" << Y(y0 + cy.h) << "\" width=\"" << fmt(cy.c.to_double() * scale)
           << "\" height=\"" << fmt(cy.h.to_double() * scale) << "\"/>\n";
    }
    os << "</g>\n<g font-family=\"serif\" font-size=\"14\" text-anchor=\"middle\">\n";
    auto mark = [&](const QuadNum& x, const QuadNum& y, int sing) {
        os << "<text x=\"" << X(x) << "\" y=\"" << Y(y) << "\" dy=\"5\">" << glyph[std::min(sing, 3)] << "</text>\n";
    };
    auto label = [&](const QuadNum& x, const QuadNum& y, int id, double dy) {
        os << "<text x=\"" << X(x) << "\" y=\"" << Y(y) << "\" dy=\"" << fmt(dy) << "\" font-size=\"11\">"
           << letter(id) << "</text>\n";
    };
    for (int i = 0; i < m; ++i) {
        const auto& cy = s.cylinders[i];
        auto [x0, y0] = *pos[i];
        for (int id : cy.bottom) {
            mark(x0 + boff[id], y0, sg.left[id]);
            if (!shared(id))
                label(x0 + boff[id] + s.lengths[id] / 2, y0, id, 14);
        }
        mark(x0 + cy.c, y0, sg.right[cy.bottom.back()]);
        for (int id : cy.top) {
            QuadNum a = top_x(id);
            mark(x0 + a, y0 + cy.h, sg.left[id]);
            if (a.is_zero())
                mark(x0 + cy.c, y0 + cy.h, sg.left[id]);
            if (!shared(id))
                label(x0 + mod(a + s.lengths[id] / 2, cy.c), y0 + cy.h, id, -6);
        }
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

namespace {

struct Options {
    std::string kappa, out, format = "text", surface, diagram, golden, golden_dir = CYLDEC_GOLDEN_DIR;
    std::string heights, twists, twist, matrix, direction, scenario, report, log, axis = "imaginary";
    std::string horocycle, rel;
    bool quotient = false, mixed = false, types_only = false, surgery = false, list = false, fail_on_violation = false;
    unsigned threads = 1;
    int step_cap = 10000, klass = 0;
    std::int64_t discriminant = 0;
};

CylinderSurface load_surface(const Options& o) {
    CylinderSurface s = parse_surface(read_file(o.surface));
    if (o.discriminant != 0 && s.D != 0 && s.D != o.discriminant)
        throw Error(ErrorCode::MixedDiscriminants, "surface lives in Q(sqrt " + std::to_string(s.D) +
                                                       "), not Q(sqrt " + std::to_string(o.discriminant) + ")");
    return s;
}

std::string render(const CylinderSurface& s, const std::string& format) {
    if (format == "json")
        return surface_json(s);
    if (format == "svg")
        return surface_svg(s);
    return format_surface(s);
}

int cmd_enumerate(const Options& o, std::ostream& out) {
    auto profile = parse_profile(o.kappa);
    if (o.types_only) {
        emit(o.out, format_types_table(profile), out);
        return kExitOk;
    }
    auto c = classify_stratum(profile, {o.quotient, o.mixed, o.threads});
    if (o.format == "json") {
        nlohmann::json j;
        j["kappa"] = profile.kappa;
        j["quotient_minus_omega"] = o.quotient;
        j["mixed_only"] = o.mixed;
        j["classes"] = nlohmann::json::array();
        for (const auto& e : c.entries) {
            std::vector<int> mixed(e.mixed.begin(), e.mixed.end());
            j["classes"].push_back({{"id", e.class_id},
                                    {"component", e.component_label},
                                    {"types", types_json(e.types)},
                                    {"mixed", mixed},
                                    {"members", e.members},
                                    {"diagram", format_diagram(e.diagram)}});
        }
        j["tallies"] = nlohmann::json::array();
        for (const auto& t : c.tallies)
            j["tallies"].push_back({{"types", types_json(t.types)},
                                    {"positive_components", t.positive_components},
                                    {"pairings", t.pairings},
                                    {"disconnected", t.disconnected},
                                    {"infeasible", t.infeasible},
                                    {"feasible", t.feasible},
                                    {"classes", t.classes}});
        emit(o.out, j.dump(2) + "\n", out);
        return kExitOk;
    }
    std::ostringstream os;
    for (const auto& e : c.entries) {
        os << "# class " << e.class_id << " component=" << e.component_label << " types=" << types_label(e.types)
           << " mixed=";
        for (bool b : e.mixed)
            os << (b ? '1' : '0');
        os << "\n" << format_diagram(e.diagram) << "\n";
    }
    os << format_summary(c);
    emit(o.out, os.str(), out);
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    auto profile = parse_profile(o.kappa);
    std::string path = o.golden;
    if (path.empty()) {
        std::string name = "h";
        for (int k : profile.kappa)
            name += std::to_string(k);
        path = o.golden_dir + "/" + name + ".txt";
    }
    auto golden = parse_golden(read_file(path));
    auto c = classify_stratum(profile, {true, true, o.threads});
    auto cmp = compare_to_golden(c, golden);
    emit(o.out, cmp.format(), out);
    return cmp.ok() ? kExitOk : kExitAssertion;
}

int cmd_build(const Options& o, std::ostream& out) {
    SeparatrixDiagram d;
    if (!o.diagram.empty()) {
        std::string text = read_file(o.diagram), line;
        std::stringstream ss(text);
        bool found = false;
        while (!found && std::getline(ss, line)) {
            std::string t = trim(line.substr(0, line.find('#')));
            if (!t.empty()) {
                d = parse_diagram(t);
                found = true;
            }
        }
        if (!found)
            throw Error(ErrorCode::ParseError, "no diagram record in " + o.diagram);
    } else {
        auto c = classify_stratum(parse_profile(o.kappa), {o.quotient, o.mixed, o.threads});
        auto it = std::find_if(c.entries.begin(), c.entries.end(),
                               [&](const ClassificationEntry& e) { return e.class_id == o.klass; });
        if (it == c.entries.end())
            throw Error(ErrorCode::DimensionMismatch, "no class " + std::to_string(o.klass));
        d = it->diagram;
    }
    CylinderSurface s = build_surface(d);
    if (!o.heights.empty() || !o.twists.empty()) {
        std::vector<QuadNum> h = o.heights.empty() ? std::vector<QuadNum>(s.cylinder_count(), QuadNum(1))
                                                   : parse_list(o.heights);
        std::vector<QuadNum> t = o.twists.empty() ? std::vector<QuadNum>(s.cylinder_count(), QuadNum(0))
                                                  : parse_list(o.twists);
        s = build_surface(d, h, t);
    }
    emit(o.out, render(s, o.format), out);
    return kExitOk;
}

CylinderSurface through_polygons(const CylinderSurface& s, const Matrix2& M, int step_cap) {
    auto r = horizontal_decomposition(apply_matrix(to_polygons(s), M), step_cap);
    if (!r)
        throw Error(ErrorCode::NonFieldDirection, "horizontal direction not periodic within the step cap");
    return *r;
}

int cmd_deform(const Options& o, std::ostream& out) {
    CylinderSurface s = load_surface(o);
    int chosen = !o.twist.empty() + !o.horocycle.empty() + !o.rel.empty() + !o.matrix.empty();
    if (chosen != 1)
        throw CLI::ValidationError("deform", "give exactly one of --twist, --horocycle, --rel, --matrix");
    CylinderSurface r;
    if (!o.twist.empty())
        r = twist_deform(s, parse_list(o.twist));
    else if (!o.horocycle.empty())
        r = through_polygons(s, Matrix2{QuadNum(1), parse_quadnum(o.horocycle), QuadNum(0), QuadNum(1)}, o.step_cap);
    else if (!o.rel.empty())
        r = rel_deform(s, parse_quadnum(o.rel), o.axis == "real" ? RelAxis::Real : RelAxis::Imaginary, o.surgery,
                       o.step_cap);
    else {
        auto m = parse_list(o.matrix);
        if (m.size() != 4)
            throw Error(ErrorCode::DimensionMismatch, "--matrix takes a,b,c,d");
        r = through_polygons(s, Matrix2{m[0], m[1], m[2], m[3]}, o.step_cap);
    }
    emit(o.out, render(r, o.format), out);
    return kExitOk;
}

int cmd_decompose(const Options& o, std::ostream& out, std::ostream& err) {
    CylinderSurface s = load_surface(o);
    auto d = parse_list(o.direction);
    if (d.size() != 2)
        throw Error(ErrorCode::DimensionMismatch, "--direction takes dx,dy");
    auto r = decompose_direction(to_polygons(s), Vec2{d[0], d[1]}, o.step_cap);
    if (!r) {
        err << "direction not periodic within " << o.step_cap << " crossings\n";
        return kExitAssertion;
    }
    emit(o.out, render(*r, o.format), out);
    return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
    CylinderSurface s = load_surface(o);
    auto rep = check_all(s);
    std::string text;
    if (o.format == "json") {
        nlohmann::json j;
        j["d"] = rep.d;
        j["checks"] = nlohmann::json::array();
        for (const auto& c : rep.checks)
            j["checks"].push_back(
                {{"name", c.name}, {"verdict", verdict_name(c.verdict)}, {"witness", c.witness}, {"note", c.note}});
        text = j.dump(2) + "\n";
    } else
        text = format_report(rep);
    emit(o.report.empty() ? o.out : o.report, text, out);
    return o.fail_on_violation && rep.any_violated() ? kExitAssertion : kExitOk;
}

int cmd_replay(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.list) {
        for (const auto& n : scenario_names())
            out << n << "\n";
        return kExitOk;
    }
    try {
        auto r = replay_scenario(o.scenario);
        emit(o.log.empty() ? o.out : o.log, r.format_log(), out);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ScenarioAssertionFailed)
            throw;
        err << e.what() << "\n";
        return kExitAssertion;
    }
    return kExitOk;
}

int cmd_svg(const Options& o, std::ostream& out) {
    emit(o.out, surface_svg(load_surface(o)), out);
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Stable cylinder decompositions, flat surfaces and rank-one constraints", "cyldec"};
    app.require_subcommand(1, 1);
    auto formats = CLI::IsMember({"text", "json", "svg"});

    auto* en = app.add_subcommand("enumerate", "classify the stable cylinder decompositions of a stratum");
    en->add_option("--kappa", o.kappa, "singularity orders, e.g. 2,2")->required();
    en->add_flag("--quotient-minus-omega", o.quotient, "identify a diagram with its reversal");
    en->add_flag("--mixed-only", o.mixed, "keep decompositions with a mixed cylinder");
    en->add_flag("--types-only", o.types_only, "print the table of component types");
    en->add_option("--threads", o.threads)->check(CLI::Range(1u, 256u));
    en->add_option("--out", o.out);
    en->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

    auto* va = app.add_subcommand("verify-appendix", "compare the classification with the bundled golden list");
    va->add_option("--kappa", o.kappa)->required();
    va->add_option("--golden", o.golden, "golden file (default: <golden-dir>/h<kappa>.txt)");
    va->add_option("--golden-dir", o.golden_dir);
    va->add_option("--threads", o.threads)->check(CLI::Range(1u, 256u));
    va->add_option("--out", o.out);

    auto* bu = app.add_subcommand("build", "flat surface from a diagram");
    auto* dopt = bu->add_option("--diagram", o.diagram, "file whose first record is a diagram with metric");
    auto* kopt = bu->add_option("--kappa", o.kappa, "take the diagram from this classification ...");
    bu->add_option("--class", o.klass, "... with this class id")->needs(kopt);
    dopt->excludes(kopt);
    bu->add_flag("--quotient-minus-omega", o.quotient);
    bu->add_flag("--mixed-only", o.mixed);
    bu->add_option("--heights", o.heights, "comma separated, one per cylinder");
    bu->add_option("--twists", o.twists, "comma separated, one per cylinder");
    bu->add_option("--out", o.out);
    bu->add_option("--format", o.format)->check(formats);

    auto* de = app.add_subcommand("deform", "twist, horocycle, Rel or GL2 deformation");
    de->add_option("--surface", o.surface)->required();
    de->add_option("--twist", o.twist, "x_1,...,x_m: t_i += x_i c_i");
    de->add_option("--horocycle", o.horocycle, "s: apply [[1,s],[0,1]]");
    de->add_option("--rel", o.rel, "t: move the second singularity by t");
    de->add_option("--axis", o.axis)->check(CLI::IsMember({"real", "imaginary"}));
    de->add_flag("--surgery", o.surgery, "allow Rel past a height-zero wall");
    de->add_option("--matrix", o.matrix, "a,b,c,d with positive determinant");
    de->add_option("--out", o.out);
    de->add_option("--format", o.format)->check(formats);

    auto* dc = app.add_subcommand("decompose", "cylinder decomposition in a direction");
    dc->add_option("--surface", o.surface)->required();
    dc->add_option("--direction", o.direction, "dx,dy")->required();
    dc->add_option("--out", o.out);
    dc->add_option("--format", o.format)->check(formats);

    auto* ch = app.add_subcommand("check", "rank-one necessary conditions");
    ch->add_option("--surface", o.surface)->required();
    ch->add_option("--report", o.report);
    ch->add_option("--out", o.out);
    ch->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
    ch->add_flag("--fail-on-violation", o.fail_on_violation, "exit 1 when a check is violated");

    auto* re = app.add_subcommand("replay", "replay a scripted classification argument");
    auto* sopt = re->add_option("--scenario", o.scenario);
    auto* lopt = re->add_flag("--list", o.list);
    sopt->excludes(lopt);
    re->add_option("--log", o.log);
    re->add_option("--out", o.out);

    auto* sv = app.add_subcommand("export-svg", "rectangle picture of a surface");
    sv->add_option("--surface", o.surface)->required();
    sv->add_option("--out", o.out);

    for (auto* sub : {en, va, bu, de, dc, ch, re, sv}) {
        sub->add_option("--step-cap", o.step_cap, "polygon crossings allowed per separatrix")
            ->check(CLI::PositiveNumber);
        sub->add_option("--discriminant", o.discriminant, "expected field Q(sqrt D)");
    }

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i >= 1; --i)
            args.emplace_back(argv[i]);
        app.parse(args);
        if (re->parsed() && !o.list && o.scenario.empty())
            throw CLI::RequiredError("--scenario");
        if (bu->parsed() && o.diagram.empty() && o.kappa.empty())
            throw CLI::RequiredError("--diagram or --kappa");
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (en->parsed())
            return cmd_enumerate(o, out);
        if (va->parsed())
            return cmd_verify(o, out);
        if (bu->parsed())
            return cmd_build(o, out);
        if (de->parsed())
            return cmd_deform(o, out);
        if (dc->parsed())
            return cmd_decompose(o, out, err);
        if (ch->parsed())
            return cmd_check(o, out);
        if (re->parsed())
            return cmd_replay(o, out, err);
        return cmd_svg(o, out);
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIO;
    } catch (const CLI::Error& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::ScenarioAssertionFailed ? kExitAssertion : kExitUsage;
    }
}

} // namespace cyldec
