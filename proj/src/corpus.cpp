#include "normspec/corpus.hpp"

#include <charconv>
#include <cmath>

#include "normspec/errors.hpp"

namespace normspec {

std::string format_real(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

MatrixFamily ex1_family() {
    const Poly2 x = Poly2::x(), y = Poly2::y();
    MatrixFamily F = MatrixFamily::poly2(2, {x, y, y, -x}, "ex1");
    return F;
}

MatrixFamily excont_loop(double r) {
    const std::string R = format_real(r);
    MatrixFamily F = MatrixFamily::expr1(2, {"0", R + "*exp(i*t)", R, "0"}, "excont");
    F.set_domain({{0.0, 2 * M_PI}});
    return F;
}

MatrixFamily ex3_family() {
    const Poly2 x = Poly2::x(), z;
    return MatrixFamily::poly1(3, {x, z, z, z, z, x * x, z, x, z}, "ex3");
}

MatrixFamily ex4_family(double alpha, double beta) {
    const std::string a = "abs(x)^" + format_real(alpha);
    const std::string b = "abs(x)^" + format_real(beta) + "*(2+sin(1/abs(x)))";
    MatrixFamily F = MatrixFamily::expr1(2, {a, a + "-" + b, "-" + a, "-" + a}, "ex4");
    F.add_override({0.0}, Mat::Zero(2, 2));
    return F;
}

std::vector<std::string> corpus_names() { return {"ex1", "excont", "ex3", "ex4"}; }

CorpusEntry corpus_entry(const std::string& name, double alpha, double beta) {
    CorpusEntry e;
    e.name = name;
    if (name == "ex1") {
        e.summary = "real symmetric [[x,y],[y,-x]] with eigenvalues ±sqrt(x^2+y^2)";
        e.family = ex1_family();
        e.branches = {"sqrt(x^2+y^2)", "-sqrt(x^2+y^2)"};
        e.branch_domain = {{-1.0, 1.0}, {-1.0, 1.0}};
        e.chart_depth = 1;
        e.certificates["lipschitz"] = true;
    } else if (name == "excont") {
        e.summary = "[[0,x],[|x|,0]] for complex x, tracked on the unit circle";
        e.family = excont_loop(1.0);
        e.branches = {"exp(i*t/2)", "-exp(i*t/2)"};
        e.branch_domain = {{0.0, 2 * M_PI}};
        e.holonomy = {1, 0};
        e.certificates["continuity"] = false;
    } else if (name == "ex3") {
        e.summary = "[[x,0,0],[0,0,x^2],[0,x,0]] with eigenvalues x, ±x^(3/2)";
        e.family = ex3_family();
        e.branches = {"x", "sqrt(x)^3", "-sqrt(x)^3"};
        e.branch_domain = {{0.0, 1.0}};
        e.gamma = 2;
    } else if (name == "ex4") {
        if (!(alpha > 1.0) || !(beta > 2.0))
            throw InvalidArgument("ex4 needs alpha > 1 and beta > 2");
        e.summary = "non-normal 2x2 family with eigenvalues ±|x|^((alpha+beta)/2) sqrt(2+sin(1/|x|))";
        e.family = ex4_family(alpha, beta);
        e.parameters = {{"alpha", alpha}, {"beta", beta}};
        const std::string lam =
            "abs(x)^" + format_real((alpha + beta) / 2) + "*sqrt(2+sin(1/abs(x)))";
        e.branches = {lam, "-" + lam};
        e.branch_domain = {{-1.0, 1.0}};
        if (alpha + beta > 4.0)
            e.certificates["c1"] = true;
        else
            e.certificates["lipschitz"] = false;
    } else {
        throw InvalidArgument("unknown corpus entry '" + name + "'");
    }
    return e;
}

}  // namespace normspec
