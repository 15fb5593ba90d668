#include "equivar/io.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace equivar {

using nlohmann::json;

namespace {

IntVec parse_int_vector(const json& j, const char* what) {
    if (!j.is_array()) fail(ErrorKind::Schema, std::string(what) + " must be an array");
    IntVec v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) fail(ErrorKind::Schema, std::string(what) + " must hold integers");
        v.push_back(x.get<Int>());
    }
    return v;
}

}  // namespace

InputDocument parse_input(const std::string& jsonText) {
    json j;
    try {
        j = json::parse(jsonText);
    } catch (const json::exception& e) {
        fail(ErrorKind::Schema, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(ErrorKind::Schema, "input document must be a JSON object");
    InputDocument doc;
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        fail(ErrorKind::Schema, "missing integer field 'dim'");
    doc.dim = j["dim"].get<int>();
    if (doc.dim < 1) fail(ErrorKind::Schema, "'dim' must be >= 1");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        fail(ErrorKind::Schema, "missing array field 'vertices'");
    for (const auto& v : j["vertices"]) {
        IntVec vec = parse_int_vector(v, "vertex");
        if (static_cast<int>(vec.size()) != doc.dim)
            fail(ErrorKind::Schema, "vertex dimension does not match 'dim'");
        doc.vertices.push_back(std::move(vec));
    }
    if (j.contains("generators")) {
        if (!j["generators"].is_array()) fail(ErrorKind::Schema, "'generators' must be an array");
        for (const auto& g : j["generators"]) {
            if (!g.is_object() || !g.contains("matrix") || !g.contains("translation"))
                fail(ErrorKind::Schema, "generator needs 'matrix' and 'translation'");
            GroupElement e;
            const auto& m = g["matrix"];
            if (!m.is_array() || static_cast<int>(m.size()) != doc.dim)
                fail(ErrorKind::Schema, "generator matrix must be dim x dim");
            e.linear = IntMat(doc.dim, doc.dim);
            for (int r = 0; r < doc.dim; ++r) {
                IntVec row = parse_int_vector(m[r], "matrix row");
                if (static_cast<int>(row.size()) != doc.dim)
                    fail(ErrorKind::Schema, "generator matrix must be dim x dim");
                for (int c = 0; c < doc.dim; ++c) e.linear.at(r, c) = row[c];
            }
            e.translation = parse_int_vector(g["translation"], "translation");
            if (static_cast<int>(e.translation.size()) != doc.dim)
                fail(ErrorKind::Schema, "generator translation must have length dim");
            doc.generators.push_back(std::move(e));
        }
    }
    if (j.contains("labels")) {
        if (!j["labels"].is_array()) fail(ErrorKind::Schema, "'labels' must be an array");
        for (const auto& s : j["labels"]) {
            if (!s.is_string()) fail(ErrorKind::Schema, "'labels' must hold strings");
            doc.labels.push_back(s.get<std::string>());
        }
    }
    return doc;
}

InputDocument load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Schema, "cannot open input file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_input(ss.str());
}

std::string input_to_json(const InputDocument& doc) {
    json j;
    j["dim"] = doc.dim;
    j["vertices"] = json::array();
    for (const IntVec& v : doc.vertices) j["vertices"].push_back(v);
    j["generators"] = json::array();
    for (const GroupElement& g : doc.generators) {
        json m = json::array();
        for (int r = 0; r < g.linear.rows; ++r) {
            json row = json::array();
            for (int c = 0; c < g.linear.cols; ++c) row.push_back(g.linear.at(r, c));
            m.push_back(row);
        }
        j["generators"].push_back({{"matrix", m}, {"translation", g.translation}});
    }
    if (!doc.labels.empty()) j["labels"] = doc.labels;
    return j.dump(2);
}

Problem build_problem(const InputDocument& doc) {
    Problem prob;
    prob.P = build_polytope(doc.vertices);
    if (doc.generators.empty())
        prob.group = std::make_shared<const FiniteGroup>(trivial_group(prob.P));
    else
        prob.group = std::make_shared<const FiniteGroup>(generate_group(doc.generators, prob.P));
    prob.labels = doc.labels;
    return prob;
}

namespace {

json class_header(const FiniteGroup& g) {
    json classes = json::array();
    for (int c = 0; c < g.num_classes(); ++c) {
        json e;
        e["size"] = g.classes[c].size();
        e["cycleType"] = cycle_type(g, g.classReps[c]);
        classes.push_back(e);
    }
    return classes;
}

std::string class_column_name(const FiniteGroup& g, const std::vector<std::string>& labels, int c) {
    if (c < static_cast<int>(labels.size())) return labels[c];
    std::string s;
    for (Int k : cycle_type(g, g.classReps[c])) {
        if (!s.empty()) s += "+";
        s += std::to_string(k);
    }
    return s;
}

struct Renderer {
    std::ostringstream text;
    json payload;
    bool asJson = false;
    std::string command;
    const FiniteGroup* group = nullptr;
    std::vector<std::string> labels;

    void header() {
        if (asJson || group == nullptr) return;
        text << "# command: " << command << "\n";
        text << "# classes:";
        for (int c = 0; c < group->num_classes(); ++c)
            text << " " << class_column_name(*group, labels, c) << "(x"
                 << group->classes[c].size() << ")";
        text << "\n";
    }

    void row(const std::string& name, const IntVec& values) {
        text << name << " |";
        for (Int v : values) text << " " << v;
        text << "\n";
    }

    void line(const std::string& s) { text << s << "\n"; }

    std::string finish() {
        if (!asJson) return text.str();
        json out;
        out["command"] = command;
        if (group != nullptr) out["classes"] = class_header(*group);
        out["payload"] = payload;
        return out.dump(2) + "\n";
    }
};

json values_json(const ClassFunction& cf) { return json(cf.values()); }

// rotated-square diamond layout: h^{d,d} on top, anti-diagonals as rows
void render_diamond_square(Renderer& r, int n,
                           const std::function<std::string(int, int)>& cell) {
    std::vector<std::vector<std::string>> rows;
    size_t width = 1;
    for (int s = 2 * n; s >= 0; --s) {
        std::vector<std::string> row;
        for (int p = std::min(s, n); p >= 0 && s - p <= n; --p) {
            if (s - p < 0) continue;
            row.push_back(cell(p, s - p));
            width = std::max(width, row.back().size());
        }
        rows.push_back(row);
    }
    for (const auto& row : rows) {
        std::string pad((2 * n + 1 - row.size()) * (width + 1) / 2, ' ');
        std::string line = pad;
        for (size_t i = 0; i < row.size(); ++i) {
            std::string c = row[i];
            std::string lpad((width - c.size()) / 2, ' ');
            std::string rpad(width - c.size() - lpad.size(), ' ');
            line += lpad + c + rpad;
            if (i + 1 < row.size()) line += " ";
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        r.line(line);
    }
}

json diamond_json(const HodgeDiamond& D) {
    json entries = json::array();
    for (int p = 0; p <= D.dim; ++p)
        for (int q = 0; q <= D.dim; ++q) {
            json e;
            e["p"] = p;
            e["q"] = q;
            e["values"] = values_json(D.at(p, q));
            entries.push_back(e);
        }
    return entries;
}

void render_character_diamond(Renderer& r, const HodgeDiamond& D, const std::string& title) {
    if (r.asJson) return;
    r.line(title + " (entry = dim H^{p,q}):");
    render_diamond_square(r, D.dim, [&](int p, int q) { return std::to_string(D.at(p, q).dim()); });
    r.line("characters (p,q | values per class):");
    for (int p = 0; p <= D.dim; ++p)
        for (int q = 0; q <= D.dim; ++q)
            if (!D.at(p, q).is_zero()) r.row("h^{" + std::to_string(p) + "," + std::to_string(q) + "}",
                                             D.at(p, q).values());
}

json quotient_json(const QuotientDiamond& Q) {
    json rows = json::array();
    for (int p = 0; p <= Q.dim; ++p) {
        json row = json::array();
        for (int q = 0; q <= Q.dim; ++q) row.push_back(Q.at(p, q));
        rows.push_back(row);
    }
    return rows;
}

void render_quotient_diamond(Renderer& r, const QuotientDiamond& Q, const std::string& title) {
    if (r.asJson) return;
    r.line(title + ":");
    render_diamond_square(r, Q.dim, [&](int p, int q) { return std::to_string(Q.at(p, q)); });
}

Subgroup quotient_subgroup(const FiniteGroup& g, const std::string& spec) {
    std::vector<int> members;
    if (spec == "trivial") {
        members = {0};
    } else if (spec == "det") {
        ClassFunction det = det_character(g);
        for (int e = 0; e < g.order(); ++e)
            if (det.at_element(e) == 1) members.push_back(e);
    } else {
        // comma-separated element indices; closure is taken
        std::vector<int> seeds;
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            try {
                seeds.push_back(std::stoi(tok));
            } catch (...) {
                fail(ErrorKind::Schema, "bad --quotient element index: " + tok);
            }
        }
        std::vector<char> in(g.order(), 0);
        in[0] = 1;
        members = {0};
        for (int s : seeds) {
            if (s < 0 || s >= g.order()) fail(ErrorKind::Schema, "quotient element index out of range");
            if (!in[s]) {
                in[s] = 1;
                members.push_back(s);
            }
        }
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<int> cur = members;
            for (int a : cur)
                for (int b : cur) {
                    int p = g.mul(a, b);
                    if (!in[p]) {
                        in[p] = 1;
                        members.push_back(p);
                        grew = true;
                    }
                }
        }
    }
    return make_subgroup(g, members);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"equivariant Ehrhart / Hodge-Deligne / mirror-symmetry calculator"};
    app.require_subcommand(1);

    std::string inputPath, format = "table", quotientSpec, side = "primal", scenarioName;
    int maxDilate = -1, bufferOpt = 5, scenarioDim = 2;
    Int scenarioDegree = 3;

    auto addCommon = [&](CLI::App* sub, bool needsInput = true) {
        if (needsInput) sub->add_option("--input", inputPath, "input JSON file")->required();
        sub->add_option("--format", format, "table or json")
            ->check(CLI::IsMember({"table", "json"}));
    };

    CLI::App* cFaces = app.add_subcommand("faces", "face lattice summary");
    addCommon(cFaces);
    CLI::App* cEhrhart = app.add_subcommand("ehrhart", "Ehrhart character table");
    addCommon(cEhrhart);
    cEhrhart->add_option("--max-dilate", maxDilate, "largest dilate");
    CLI::App* cPhi = app.add_subcommand("phi", "phi[t] coefficients and diagnostics");
    addCommon(cPhi);
    cPhi->add_option("--buffer", bufferOpt, "polynomiality certification buffer");
    CLI::App* cBox = app.add_subcommand("box", "box-point characters of a simplex");
    addCommon(cBox);
    CLI::App* cHodge = app.add_subcommand("hodge", "Hodge-Deligne polynomial of the torus hypersurface");
    addCommon(cHodge);
    CLI::App* cDiamond = app.add_subcommand("diamond", "Hodge diamond of the compactified hypersurface");
    addCommon(cDiamond);
    cDiamond->add_option("--quotient", quotientSpec, "trivial | det | element index list");
    CLI::App* cQuotient = app.add_subcommand("quotient", "Hodge diamond of the quotient");
    addCommon(cQuotient);
    cQuotient->add_option("--quotient", quotientSpec, "trivial | det | element index list");
    CLI::App* cMirror = app.add_subcommand("mirror", "reflexive pair and predicted mirror diamond");
    addCommon(cMirror);
    cMirror->add_option("--side", side, "primal or dual")->check(CLI::IsMember({"primal", "dual"}));
    CLI::App* cScenario = app.add_subcommand("scenario", "prepared worked examples");
    cScenario->add_option("--name", scenarioName, "fermat | quintic-mirror")->required();
    cScenario->add_option("--dim", scenarioDim, "fermat dimension d");
    cScenario->add_option("--degree", scenarioDegree, "fermat degree m");
    cScenario->add_option("--format", format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    Renderer r;
    r.asJson = (format == "json");
    try {
        if (cScenario->parsed()) {
            r.command = "scenario";
            ScenarioBundle b;
            if (scenarioName == "fermat")
                b = scenario_fermat(scenarioDim, scenarioDegree);
            else if (scenarioName == "quintic-mirror")
                b = scenario_quintic_mirror();
            else
                fail(ErrorKind::UnknownScenario, "unknown scenario: " + scenarioName);
            r.group = b.group.get();
            InputDocument doc;
            doc.dim = b.P.dim;
            doc.vertices = b.P.vertices;
            // two generators suffice; emit the full element list for clarity? keep generators small
            std::vector<int> transposition(b.P.vertices.size()), cycle(b.P.vertices.size());
            for (size_t i = 0; i < transposition.size(); ++i) transposition[i] = static_cast<int>(i);
            std::swap(transposition[0], transposition[1]);
            for (size_t i = 0; i < cycle.size(); ++i) cycle[i] = static_cast<int>((i + 1) % cycle.size());
            doc.generators = {element_from_vertex_permutation(b.P, transposition),
                              element_from_vertex_permutation(b.P, cycle)};
            r.header();
            r.payload["input"] = json::parse(input_to_json(doc));
            r.payload["name"] = b.name;
            if (!r.asJson) {
                r.line("input document:");
                r.line(input_to_json(doc));
            }
            if (b.name == "fermat") {
                json traces = json::array();
                r.line("expected primitive-cohomology traces (p, then per class):");
                for (size_t p = 0; p < b.expectedPrimitiveTraces.size(); ++p) {
                    traces.push_back(b.expectedPrimitiveTraces[p]);
                    if (!r.asJson)
                        r.row("H^{" + std::to_string(p) + ",*}_prim", b.expectedPrimitiveTraces[p]);
                }
                r.payload["expectedPrimitiveTraces"] = traces;
            } else {
                r.payload["dualVertices"] = json::array();
                for (const IntVec& v : b.pair->dual.vertices) r.payload["dualVertices"].push_back(v);
                r.payload["expectedDiamond"] = diamond_json(*b.expectedDiamond);
                r.payload["expectedMirrorDiamond"] = diamond_json(*b.expectedMirrorDiamond);
                r.payload["expectedQuotient"] = quotient_json(*b.expectedQuotient);
                r.payload["expectedMirrorQuotient"] = quotient_json(*b.expectedMirrorQuotient);
                if (!r.asJson) {
                    r.line("dual simplex vertices:");
                    for (const IntVec& v : b.pair->dual.vertices) r.row("", v);
                    render_character_diamond(r, *b.expectedDiamond, "expected Hodge diamond");
                    render_character_diamond(r, *b.expectedMirrorDiamond,
                                             "expected mirror Hodge diamond");
                    render_quotient_diamond(r, *b.expectedQuotient, "expected quotient diamond");
                    render_quotient_diamond(r, *b.expectedMirrorQuotient,
                                            "expected mirror quotient diamond");
                }
            }
            out << r.finish();
            return 0;
        }

        Problem prob = build_problem(load_input(inputPath));
        const FiniteGroup& G = *prob.group;
        r.group = &G;
        r.labels = prob.labels;
        ActedPolytope ap = acted(prob.P, G);

        if (cFaces->parsed()) {
            r.command = "faces";
            r.header();
            json faces = json::array();
            std::map<int, int> countByDim;
            for (const Face& f : prob.P.faces) {
                ++countByDim[f.dim];
                json e;
                e["id"] = f.id;
                e["dim"] = f.dim;
                e["vertices"] = f.vertexSet;
                e["facets"] = f.containingFacets;
                faces.push_back(e);
            }
            r.payload["faces"] = faces;
            json counts;
            for (auto& [d, n] : countByDim) counts[std::to_string(d)] = n;
            r.payload["countsByDim"] = counts;
            Classification cls = classify(prob.P);
            r.payload["isSimple"] = cls.isSimple;
            r.payload["isSimplex"] = cls.isSimplex;
            r.payload["reflexive"] = cls.reflexive;
            if (!r.asJson) {
                for (auto& [d, n] : countByDim)
                    r.line("dim " + std::to_string(d) + ": " + std::to_string(n) + " faces");
                r.line(std::string("simple: ") + (cls.isSimple ? "yes" : "no"));
                r.line(std::string("simplex: ") + (cls.isSimplex ? "yes" : "no"));
                r.line(std::string("reflexive: ") + (cls.reflexive ? "yes" : "no"));
            }
        } else if (cEhrhart->parsed()) {
            r.command = "ehrhart";
            r.header();
            int top = maxDilate >= 0 ? maxDilate : prob.P.dim + 2;
            json all = json::array(), interior = json::array();
            for (int m = 0; m <= top; ++m) {
                ClassFunction c = ehrhart_character(ap, m, Region::All);
                all.push_back(values_json(c));
                if (!r.asJson) r.row("chi_{" + std::to_string(m) + "P}", c.values());
            }
            for (int m = 1; m <= top; ++m) {
                ClassFunction c = ehrhart_character(ap, m, Region::Interior);
                interior.push_back(values_json(c));
                if (!r.asJson) r.row("chi*_{" + std::to_string(m) + "P}", c.values());
            }
            r.payload["all"] = all;
            r.payload["interior"] = interior;
        } else if (cPhi->parsed()) {
            r.command = "phi";
            r.header();
            PhiPolynomial phi = compute_phi(ap, bufferOpt);
            json coeffs = json::array();
            for (size_t i = 0; i < phi.coeffs.size(); ++i) {
                coeffs.push_back(values_json(phi.coeffs[i]));
                if (!r.asJson && (i == 0 || !phi.coeffs[i].is_zero()))
                    r.row("phi_" + std::to_string(i), phi.coeffs[i].values());
            }
            r.payload["coefficients"] = coeffs;
            json diag;
            diag["isPolynomial"] = phi.isPolynomial;
            diag["isPalindromic"] = phi.isPalindromic;
            diag["reciprocityVerified"] = phi.reciprocityVerified;
            diag["topEqualsInterior"] = phi.topEqualsInterior;
            diag["boundsOk"] = phi.boundsOk;
            json evid = json::array();
            bool allGood = true;
            for (const EffectivenessEntry& e : phi.effectivenessEvidence) {
                json je;
                je["lambda"] = e.lambda;
                je["coeff"] = e.coeff;
                je["multiplicity"] = e.value.str();
                je["integral"] = e.integral;
                je["nonnegative"] = e.nonnegative;
                evid.push_back(je);
                allGood = allGood && e.integral && e.nonnegative;
            }
            diag["effectivenessEvidence"] = evid;
            r.payload["diagnostics"] = diag;
            if (!r.asJson) {
                r.line(std::string("polynomial: ") + (phi.isPolynomial ? "yes" : "NO (diagnostic)"));
                r.line(std::string("palindromic: ") + (phi.isPalindromic ? "yes" : "no"));
                r.line(std::string("reciprocity verified: ") + (phi.reciprocityVerified ? "yes" : "no"));
                r.line(std::string("effectiveness evidence: ") + (allGood ? "pass" : "FAIL"));
            }
        } else if (cBox->parsed()) {
            r.command = "box";
            r.header();
            json closed = json::object(), open = json::object();
            for (int k = 0; k <= prob.P.dim; ++k) {
                ClassFunction c = box_character(ap, k, false);
                closed[std::to_string(k)] = values_json(c);
                if (!r.asJson) r.row("BOX_" + std::to_string(k), c.values());
            }
            for (int k = 1; k <= prob.P.dim; ++k) {
                ClassFunction c = box_character(ap, k, true);
                open[std::to_string(k)] = values_json(c);
                if (!r.asJson) r.row("Pi_" + std::to_string(k), c.values());
            }
            r.payload["closed"] = closed;
            r.payload["open"] = open;
        } else if (cHodge->parsed()) {
            r.command = "hodge";
            r.header();
            EHDPolynomial E = hypersurface_E(ap);
            json entries = json::array();
            for (const auto& [pq, cf] : E.terms()) {
                json e;
                e["p"] = pq.first;
                e["q"] = pq.second;
                e["values"] = values_json(cf);
                entries.push_back(e);
                if (!r.asJson)
                    r.row("e^{" + std::to_string(pq.first) + "," + std::to_string(pq.second) + "}",
                          cf.values());
            }
            r.payload["entries"] = entries;
        } else if (cDiamond->parsed() || cQuotient->parsed()) {
            r.command = cDiamond->parsed() ? "diamond" : "quotient";
            r.header();
            HodgeDiamond D = hodge_diamond(ap);
            if (cDiamond->parsed()) {
                r.payload["entries"] = diamond_json(D);
                render_character_diamond(r, D, "Hodge diamond");
            }
            if (!quotientSpec.empty() || cQuotient->parsed()) {
                std::string spec = quotientSpec.empty() ? "det" : quotientSpec;
                Subgroup sub = quotient_subgroup(G, spec);
                QuotientDiamond Q = quotient_diamond(D, sub);
                r.payload["quotient"] = quotient_json(Q);
                r.payload["quotientOrder"] = sub.members.size();
                render_quotient_diamond(r, Q, "quotient Hodge diamond (subgroup order " +
                                                  std::to_string(sub.members.size()) + ")");
            }
        } else if (cMirror->parsed()) {
            r.command = "mirror";
            r.header();
            MirrorPair pair = mirror_pair(prob.P, G);
            if (side == "dual") {
                // swap roles: run the check from the dual side
                MirrorPair swapped;
                swapped.polytope = pair.dual;
                swapped.dual = pair.polytope;
                swapped.group = pair.dualGroup;
                swapped.dualGroup = pair.group;
                pair = std::move(swapped);
            }
            MirrorReport rep = smooth_pair_check(pair);
            json jr;
            jr["primalSimple"] = rep.primalSimple;
            jr["dualSimple"] = rep.dualSimple;
            jr["primalSmooth"] = rep.primalSmooth;
            jr["dualSmooth"] = rep.dualSmooth;
            jr["fullChecked"] = rep.fullChecked;
            jr["relationHolds"] = rep.relationHolds;
            jr["notes"] = rep.notes;
            json cells = json::array();
            for (int p = 0; p < static_cast<int>(rep.cells.size()); ++p) {
                json row = json::array();
                for (int q = 0; q < static_cast<int>(rep.cells[p].size()); ++q)
                    row.push_back(rep.cells[p][q] == CellStatus::Verified ? "VERIFIED"
                                                                          : "PREDICTED-ONLY");
                cells.push_back(row);
            }
            jr["cells"] = cells;
            r.payload["report"] = jr;
            r.payload["dualVertices"] = json::array();
            for (const IntVec& v : pair.dual.vertices) r.payload["dualVertices"].push_back(v);
            if (rep.primal) r.payload["diamond"] = diamond_json(*rep.primal);
            if (rep.predictedDual) r.payload["predictedMirror"] = diamond_json(*rep.predictedDual);
            if (!r.asJson) {
                r.line(std::string("relation holds on checked cells: ") +
                       (rep.relationHolds ? "yes" : "NO"));
                for (const std::string& n : rep.notes) r.line("note: " + n);
                if (rep.primal) render_character_diamond(r, *rep.primal, "primal Hodge diamond");
                if (rep.predictedDual)
                    render_character_diamond(r, *rep.predictedDual, "predicted mirror diamond");
            }
        }
        out << r.finish();
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace equivar
