#include "normspec/io.hpp"

#include <fstream>
#include <sstream>

#include "normspec/corpus.hpp"
#include "normspec/errors.hpp"

namespace normspec {

namespace {

const char* kind_name(MatrixFamily::Kind k) {
    switch (k) {
        case MatrixFamily::Kind::Poly1: return "poly1";
        case MatrixFamily::Kind::Poly2: return "poly2";
        case MatrixFamily::Kind::Expr1: return "expr1";
    }
    return "?";
}

const char* smoothness_name(Smoothness s) {
    switch (s) {
        case Smoothness::C0: return "C0";
        case Smoothness::C1: return "C1";
        case Smoothness::C2: return "C2";
    }
    return "?";
}

double number(const Json& j, const char* what) {
    if (!j.is_number()) throw FormatError(std::string(what) + ": expected a number");
    return j.get<double>();
}

int parse_int(const std::string& s, const std::string& key) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || v < 0) throw FormatError("bad exponent key '" + key + "'");
    return v;
}

Json row_json(const std::vector<Complex>& row) {
    Json r = Json::array();
    for (Complex z : row) r.push_back(complex_to_json(z));
    return r;
}

const char* node_kind(ChartNode::Kind k) {
    switch (k) {
        case ChartNode::Kind::Blowup: return "blowup";
        case ChartNode::Kind::Split: return "split";
        case ChartNode::Kind::Extract: return "extract";
        case ChartNode::Kind::Leaf: return "leaf";
    }
    return "?";
}

const char* node_status(ChartNode::Status s) {
    switch (s) {
        case ChartNode::Status::Resolved: return "resolved";
        case ChartNode::Status::Split: return "split";
        case ChartNode::Status::Pending: return "pending";
        case ChartNode::Status::DepthExceeded: return "depth_exceeded";
    }
    return "?";
}

const char* leaf_name(ChartNode::Leaf l) {
    switch (l) {
        case ChartNode::Leaf::None: return "none";
        case ChartNode::Leaf::Scalar: return "scalar";
        case ChartNode::Leaf::Distinct: return "distinct";
        case ChartNode::Leaf::Constant: return "constant";
    }
    return "?";
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw FormatError("complex number must be [re, im]");
    return {number(j[0], "re"), number(j[1], "im")};
}

Json matrix_to_json(const Mat& M) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        Json r = Json::array();
        for (Eigen::Index k = 0; k < M.cols(); ++k) r.push_back(complex_to_json(M(i, k)));
        rows.push_back(std::move(r));
    }
    return rows;
}

Mat matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw FormatError("matrix must be a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    Mat M(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Json& r = j[i];
        if (!r.is_array() || static_cast<Eigen::Index>(r.size()) != n) throw FormatError("matrix must be square");
        for (Eigen::Index k = 0; k < n; ++k) M(i, k) = complex_from_json(r[k]);
    }
    return M;
}

Json poly_to_json(const Poly2& p, int params) {
    Json o = Json::object();
    for (const auto& [e, c] : p.terms()) {
        if (params == 1 && e[1] != 0) throw InvalidArgument("one-parameter polynomial has a y term");
        const std::string key = params == 1 ? std::to_string(e[0]) : std::to_string(e[0]) + "," + std::to_string(e[1]);
        o[key] = complex_to_json(c);
    }
    return o;
}

Poly2 poly_from_json(const Json& j, int params) {
    if (!j.is_object()) throw FormatError("polynomial entry must be an object of exponent: [re, im]");
    Poly2 p;
    for (const auto& [key, val] : j.items()) {
        Exponent e{0, 0};
        const auto comma = key.find(',');
        if (params == 1) {
            if (comma != std::string::npos) throw FormatError("one-parameter key '" + key + "' has two exponents");
            e[0] = parse_int(key, key);
        } else {
            if (comma == std::string::npos) throw FormatError("two-parameter key '" + key + "' needs 'a,b'");
            e[0] = parse_int(key.substr(0, comma), key);
            e[1] = parse_int(key.substr(comma + 1), key);
        }
        p += Poly2::monomial(complex_from_json(val), e[0], e[1]);
    }
    return p;
}

Json family_to_json(const MatrixFamily& F) {
    Json j;
    j["format"] = kFamilyFormat;
    j["name"] = F.name();
    j["n"] = F.n();
    j["kind"] = kind_name(F.kind());
    Json dom = Json::array();
    for (const auto& [lo, hi] : F.domain()) dom.push_back(Json::array({lo, hi}));
    j["domain"] = dom;
    Json entries = Json::array();
    if (F.is_polynomial())
        for (const auto& p : F.poly_entries()) entries.push_back(poly_to_json(p, F.params()));
    else
        for (const auto& s : F.expr_sources()) entries.push_back(s);
    j["entries"] = entries;
    Json ov = Json::array();
    for (const auto& o : F.overrides()) ov.push_back(Json::array({o.point, matrix_to_json(o.value)}));
    j["overrides"] = ov;
    return j;
}

MatrixFamily family_from_json(const Json& j) {
    if (!j.is_object()) throw FormatError("family must be a JSON object");
    for (const char* k : {"n", "kind", "entries"})
        if (!j.contains(k)) throw FormatError(std::string("family is missing '") + k + "'");
    if (!j["n"].is_number_integer() || j["n"].get<int>() < 1) throw FormatError("'n' must be a positive integer");
    const int n = j["n"].get<int>();
    const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
    const std::string name = j.value("name", std::string{});
    const Json& ent = j["entries"];
    if (!ent.is_array() || static_cast<int>(ent.size()) != n * n)
        throw FormatError("'entries' must hold n*n row-major entries");
    MatrixFamily F;
    if (kind == "poly1" || kind == "poly2") {
        const int params = kind == "poly1" ? 1 : 2;
        std::vector<Poly2> e;
        for (const auto& x : ent) e.push_back(poly_from_json(x, params));
        F = params == 1 ? MatrixFamily::poly1(n, std::move(e), name) : MatrixFamily::poly2(n, std::move(e), name);
    } else if (kind == "expr1") {
        std::vector<std::string> s;
        for (const auto& x : ent) {
            if (!x.is_string()) throw FormatError("expr1 entries must be expression strings");
            s.push_back(x.get<std::string>());
        }
        F = MatrixFamily::expr1(n, std::move(s), name);
    } else {
        throw FormatError("'kind' must be poly1, poly2 or expr1");
    }
    if (j.contains("domain")) {
        std::vector<std::pair<double, double>> d;
        for (const auto& iv : j["domain"]) {
            if (!iv.is_array() || iv.size() != 2) throw FormatError("domain intervals must be [lo, hi]");
            d.emplace_back(number(iv[0], "domain"), number(iv[1], "domain"));
        }
        try {
            F.set_domain(std::move(d));
        } catch (const InvalidArgument& e) {
            throw FormatError(e.what());
        }
    }
    if (j.contains("overrides")) {
        for (const auto& o : j["overrides"]) {
            if (!o.is_array() || o.size() != 2 || !o[0].is_array()) throw FormatError("override must be [point, matrix]");
            std::vector<double> pt;
            for (const auto& v : o[0]) pt.push_back(number(v, "override point"));
            Mat M = matrix_from_json(o[1]);
            if (M.rows() != n) throw FormatError("override matrix has the wrong size");
            try {
                F.add_override(std::move(pt), std::move(M));
            } catch (const InvalidArgument& e) {
                throw FormatError(e.what());
            }
        }
    }
    return F;
}

MatrixFamily read_family(const std::string& path) { return family_from_json(read_json(path)); }

std::string branchset_csv(const BranchSet& B) {
    std::ostringstream os;
    os << "t";
    for (int j = 1; j <= B.n(); ++j) os << ",re_" << j << ",im_" << j;
    os << '\n';
    for (int k = 0; k < B.nodes(); ++k) {
        os << format_real(B.grid[k]);
        for (Complex z : B.values[k]) os << ',' << format_real(z.real()) << ',' << format_real(z.imag());
        os << '\n';
    }
    return os.str();
}

Json branchset_json(const BranchSet& B) {
    Json j;
    j["columns"] = kBranchCsvFormat;
    j["n"] = B.n();
    j["nodes"] = B.nodes();
    j["perms"] = B.perms;
    Json tags = Json::array();
    for (auto t : B.tags) tags.push_back(smoothness_name(t));
    j["tags"] = tags;
    j["marked"] = B.marked;
    if (!B.left_d.empty()) {
        Json l = Json::array(), r = Json::array();
        for (const auto& row : B.left_d) l.push_back(row_json(row));
        for (const auto& row : B.right_d) r.push_back(row_json(row));
        j["left_derivatives"] = l;
        j["right_derivatives"] = r;
    }
    return j;
}

Json expansion_to_json(const Expansion& e) {
    Json j;
    j["gamma"] = e.gamma;
    j["internal_truncation"] = e.internal_truncation;
    j["residual"] = e.residual;
    Json br = Json::array();
    for (const auto& b : e.branches) {
        Json x;
        x["gamma"] = b.gamma;
        x["multiplicity"] = b.multiplicity;
        x["coeffs"] = row_json(b.series.coeffs());
        br.push_back(std::move(x));
    }
    j["branches"] = br;
    return j;
}

Json chart_tree_to_json(const ChartTree& T) {
    Json j;
    j["family"] = T.family.name();
    j["depth"] = T.depth();
    j["max_depth"] = T.max_depth;
    Json nodes = Json::array();
    for (std::size_t id = 0; id < T.nodes.size(); ++id) {
        const ChartNode& N = T.nodes[id];
        Json x;
        x["id"] = id;
        x["parent"] = N.parent;
        x["path"] = path_string(N.path);
        x["kind"] = node_kind(N.kind);
        x["status"] = node_status(N.status);
        x["leaf"] = leaf_name(N.leaf);
        x["n"] = N.n;
        x["extracted"] = N.extracted;
        x["isotropy"] = N.isotropy;
        if (N.kind == ChartNode::Kind::Extract) {
            x["alpha"] = N.alpha;
            x["shift"] = poly_to_json(N.shift, 2);
        }
        if (N.approximate) x["truncation"] = N.truncation;
        x["approximate"] = N.approximate;
        Json ent = Json::array();
        for (const auto& p : N.entries) ent.push_back(poly_to_json(p, 2));
        x["entries"] = ent;
        x["children"] = N.children;
        nodes.push_back(std::move(x));
    }
    j["nodes"] = nodes;
    return j;
}

std::string chart_tree_summary(const ChartTree& T) {
    std::ostringstream os;
    os << "family " << (T.family.name().empty() ? "<unnamed>" : T.family.name()) << ": " << T.nodes.size()
       << " nodes, depth " << T.depth() << '\n';
    for (int id : T.leaves()) {
        const ChartNode& N = T.nodes[id];
        os << "  [" << (N.path.empty() ? "root" : path_string(N.path)) << "] " << node_status(N.status) << ' '
           << leaf_name(N.leaf) << " n=" << N.n << " extracted=(" << N.extracted[0] << ',' << N.extracted[1] << ')';
        if (N.approximate) os << " approximate@" << N.truncation;
        os << '\n';
    }
    return os.str();
}

Json run_manifest(const std::string& command, const Json& tolerances, const Json& seeds) {
    Json j;
    j["tool"] = "normspec";
    j["version"] = kVersion;
    j["command"] = command;
    j["formats"] = {{"family", kFamilyFormat}, {"branches_csv", kBranchCsvFormat}};
    j["tolerances"] = tolerances;
    j["seeds"] = seeds;
    return j;
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

void write_text(const std::string& path, const std::string& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << s;
}

}  // namespace normspec
