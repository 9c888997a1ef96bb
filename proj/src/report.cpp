#include "hfl/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string_view>
#include <vector>

#include "hfl/errors.hpp"
#include "hfl/version.hpp"

namespace hfl {

std::string fmt15(double v) {
    char buf[64];
    const int n = std::snprintf(buf, sizeof buf, "%.15g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

std::string fmtExact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

// Incremental pretty-printed JSON with deterministic layout: two-space
// indents, one element per line, LF endings.
class JsonDoc {
public:
    std::string take() {
        out_.push_back('\n');
        return std::move(out_);
    }
    void beginObject() { open('{'); }
    void endObject() { close('}'); }
    void beginArray() { open('['); }
    void endArray() { close(']'); }
    void key(std::string_view k) {
        element();
        out_ += '"';
        escape(k);
        out_ += "\": ";
        inlineValue_ = true;
    }
    void str(std::string_view v) {
        element();
        out_ += '"';
        escape(v);
        out_ += '"';
    }
    // Computed values; non-finite renders as null.
    void num15(double v) {
        element();
        out_ += std::isfinite(v) ? fmt15(v) : "null";
    }
    // Echoed inputs; exact round-trip.
    void numExact(double v) {
        element();
        out_ += std::isfinite(v) ? fmtExact(v) : "null";
    }
    void integer(std::uint64_t v) {
        element();
        out_ += std::to_string(v);
    }
    void boolean(bool v) {
        element();
        out_ += v ? "true" : "false";
    }
    void null() {
        element();
        out_ += "null";
    }

private:
    void open(char c) {
        element();
        out_ += c;
        levels_.push_back(false);
    }
    void close(char c) {
        const bool populated = levels_.back();
        levels_.pop_back();
        if (populated) {
            out_ += '\n';
            indent();
        }
        out_ += c;
    }
    void element() {
        if (inlineValue_) {
            inlineValue_ = false;
            return;
        }
        if (levels_.empty()) return;
        if (levels_.back()) out_ += ',';
        levels_.back() = true;
        out_ += '\n';
        indent();
    }
    void indent() { out_.append(2 * levels_.size(), ' '); }
    void escape(std::string_view s) {
        for (const char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\r': out_ += "\\r"; break;
                case '\t': out_ += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out_ += buf;
                    } else {
                        out_ += c;
                    }
            }
        }
    }

    std::string out_;
    std::vector<bool> levels_;
    bool inlineValue_ = false;
};

void emitTerms(JsonDoc& d, const std::vector<BoundaryTerm>& terms) {
    d.beginArray();
    for (const BoundaryTerm& term : terms) {
        d.beginObject();
        d.key("coeff");
        d.numExact(term.coeff);
        d.key("order");
        d.numExact(term.order);
        d.key("point");
        d.numExact(term.point);
        d.endObject();
    }
    d.endArray();
}

void emitProblem(JsonDoc& d, const ProblemSpec& s) {
    d.beginObject();
    d.key("a");
    d.numExact(s.a);
    d.key("b");
    d.numExact(s.b);
    d.key("alpha1");
    d.numExact(s.alpha1);
    d.key("beta1");
    d.numExact(s.beta1);
    d.key("alpha2");
    d.numExact(s.alpha2);
    d.key("beta2");
    d.numExact(s.beta2);
    d.key("p1");
    d.numExact(s.p1);
    d.key("q1");
    d.numExact(s.q1);
    d.key("p2");
    d.numExact(s.p2);
    d.key("q2");
    d.numExact(s.q2);
    d.key("lambda1");
    d.numExact(s.lambda1);
    d.key("lambda2");
    d.numExact(s.lambda2);
    d.key("xTerms");
    emitTerms(d, s.xTerms);
    d.key("yTerms");
    emitTerms(d, s.yTerms);
    d.key("f");
    d.str(s.f.print());
    d.key("g");
    d.str(s.g.print());
    d.key("N");
    d.integer(s.N);
    if (s.growth) {
        d.key("growth");
        d.beginObject();
        d.key("M1");
        d.numExact(s.growth->M1);
        d.key("M2");
        d.numExact(s.growth->M2);
        d.key("M3");
        d.numExact(s.growth->M3);
        d.key("Mbar1");
        d.numExact(s.growth->Mbar1);
        d.key("Mbar2");
        d.numExact(s.growth->Mbar2);
        d.key("Mbar3");
        d.numExact(s.growth->Mbar3);
        d.endObject();
    }
    if (s.lipschitz) {
        d.key("lipschitz");
        d.beginObject();
        d.key("L1cal");
        d.numExact(s.lipschitz->L1cal);
        d.key("L2cal");
        d.numExact(s.lipschitz->L2cal);
        d.key("L1zero");
        d.numExact(s.lipschitz->L1zero);
        d.key("L2zero");
        d.numExact(s.lipschitz->L2zero);
        d.endObject();
    }
    d.key("solver");
    d.beginObject();
    d.key("tol");
    d.numExact(s.solver.tol);
    d.key("maxIter");
    d.integer(s.solver.maxIter);
    d.key("theta");
    d.numExact(s.solver.theta);
    d.endObject();
    d.endObject();
}

void emitHeader(JsonDoc& d, const ProblemSpec& spec, const std::string& command) {
    d.key("tool");
    d.str(kToolVersion);
    d.key("command");
    d.str(command);
    d.key("echo");
    emitProblem(d, spec);
}

const char* verdictName(Verdict v) { return v == Verdict::pass ? "pass" : "fail"; }

void emitUhConstants(JsonDoc& d, const UhCheck& c) {
    d.beginObject();
    d.key("A1");
    d.num15(c.A1);
    d.key("B1");
    d.num15(c.B1);
    d.key("C1");
    d.num15(c.C1);
    d.key("A2");
    d.num15(c.A2);
    d.key("B2");
    d.num15(c.B2);
    d.key("C2");
    d.num15(c.C2);
    d.key("Delta");
    d.num15(c.Delta);
    d.key("lambdaUH");
    if (c.lambdaUH)
        d.num15(*c.lambdaUH);
    else
        d.null();
    d.key("verdict");
    d.str(verdictName(c.verdict));
    d.key("reason");
    d.str(c.reason);
    d.endObject();
}

const char* kUhDirectionNote =
    "The stability verdict requires A1 < 1, A2 < 1 and |Delta| > 1e-12; "
    "statements of this criterion with reversed inequalities contradict the "
    "derivation of the bound and are corrected here.";

const char* kGammaNormalizationNote =
    "All bound denominators use the Gamma(e + 1) normalization uniformly; "
    "algebraic variants such as (b - a)^p / (p + 1) are not used.";

const char* kTermPointNote =
    "Sums over the y-side boundary terms are evaluated at the term points; "
    "coefficient symbols appearing in place of the points in some statements "
    "of the X2 and F2 bounds are treated as typos.";

const char* kHypothesisSourceNote =
    "Growth and Lipschitz constants are user-asserted inputs taken from the "
    "problem file; they are not derived from f and g.";

const char* kCaputoTerminalNote =
    "Caputo-type building blocks use the interval's left endpoint as the "
    "lower terminal uniformly.";

const char* kUncertifiedNote =
    "Fixed-point iteration is justified when the contraction certificate "
    "passes; results without a passing certificate are labeled uncertified.";

const char* kScalarBoundNote =
    "The scalar bound uses eps = max(eps1, eps2); per-component bounds "
    "evaluated at (eps1, eps2) are reported alongside it.";

}  // namespace

std::string render_problem_json(const ProblemSpec& spec) {
    JsonDoc d;
    emitProblem(d, spec);
    return d.take();
}

std::string render_certificate(const ProblemSpec& spec, const Certificate& cert,
                               const std::string& command) {
    JsonDoc d;
    d.beginObject();
    emitHeader(d, spec, command);
    d.key("orders");
    d.beginObject();
    d.key("gamma1");
    d.num15(cert.orders.gamma1);
    d.key("gamma2");
    d.num15(cert.orders.gamma2);
    d.key("delta1");
    d.num15(cert.orders.delta1);
    d.key("delta2");
    d.num15(cert.orders.delta2);
    d.endObject();
    d.key("structural");
    d.beginObject();
    d.key("phi1");
    d.num15(cert.structural.phi1);
    d.key("phi2");
    d.num15(cert.structural.phi2);
    d.key("phi3");
    d.num15(cert.structural.phi3);
    d.key("phi4");
    d.num15(cert.structural.phi4);
    d.key("Lambda");
    d.num15(cert.structural.Lambda);
    d.endObject();
    d.key("growthBounds");
    d.beginObject();
    d.key("X1");
    d.num15(cert.growth.X1);
    d.key("Y1");
    d.num15(cert.growth.Y1);
    d.key("F1");
    d.num15(cert.growth.F1);
    d.key("G1");
    d.num15(cert.growth.G1);
    d.key("X2");
    d.num15(cert.growth.X2);
    d.key("Y2");
    d.num15(cert.growth.Y2);
    d.key("F2");
    d.num15(cert.growth.F2);
    d.key("G2");
    d.num15(cert.growth.G2);
    d.endObject();
    d.key("existence");
    if (cert.existence) {
        d.beginObject();
        d.key("K1");
        d.num15(cert.existence->K1);
        d.key("K2");
        d.num15(cert.existence->K2);
        d.key("lsBound");
        if (cert.existence->lsBound)
            d.num15(*cert.existence->lsBound);
        else
            d.null();
        d.key("verdict");
        d.str(verdictName(cert.existence->verdict));
        d.key("reason");
        d.str(cert.existence->reason);
        d.endObject();
    } else {
        d.null();
    }
    d.key("uniqueness");
    if (cert.uniqueness) {
        d.beginObject();
        d.key("kappa");
        d.num15(cert.uniqueness->kappa);
        d.key("radius");
        if (cert.uniqueness->radius)
            d.num15(*cert.uniqueness->radius);
        else
            d.null();
        d.key("verdict");
        d.str(verdictName(cert.uniqueness->verdict));
        d.key("reason");
        d.str(cert.uniqueness->reason);
        d.endObject();
    } else {
        d.null();
    }
    d.key("ulamHyers");
    if (cert.ulamHyers) {
        emitUhConstants(d, *cert.ulamHyers);
    } else {
        d.null();
    }
    d.key("notes");
    d.beginArray();
    d.str(kGammaNormalizationNote);
    if (!spec.yTerms.empty()) d.str(kTermPointNote);
    if (cert.existence || cert.uniqueness) d.str(kHypothesisSourceNote);
    if (cert.ulamHyers) d.str(kUhDirectionNote);
    d.endArray();
    d.endObject();
    return d.take();
}

std::string render_solve_report(const ProblemSpec& spec, const SolveResult& result,
                                const std::string& command,
                                const std::string& method) {
    JsonDoc d;
    d.beginObject();
    emitHeader(d, spec, command);
    d.key("method");
    d.str(method);
    d.key("settings");
    d.beginObject();
    d.key("tol");
    d.numExact(spec.solver.tol);
    d.key("maxIter");
    d.integer(spec.solver.maxIter);
    d.key("theta");
    d.numExact(spec.solver.theta);
    d.endObject();
    d.key("iterations");
    d.integer(result.iterations);
    d.key("converged");
    d.boolean(result.converged);
    d.key("errorTrace");
    d.beginArray();
    for (const double v : result.errorTrace) d.num15(v);
    d.endArray();
    d.key("contractionRatios");
    d.beginArray();
    for (const double v : result.contractionRatios) d.num15(v);
    d.endArray();
    d.key("residuals");
    d.beginObject();
    d.key("ode1");
    d.num15(result.residuals.ode1);
    d.key("ode2");
    d.num15(result.residuals.ode2);
    d.key("bc_xa");
    d.num15(result.residuals.bc_xa);
    d.key("bc_xb");
    d.num15(result.residuals.bc_xb);
    d.key("bc_ya");
    d.num15(result.residuals.bc_ya);
    d.key("bc_yb");
    d.num15(result.residuals.bc_yb);
    d.endObject();
    d.key("certification");
    if (spec.lipschitz) {
        const UniquenessCheck u = banach_check(spec, *spec.lipschitz);
        if (u.verdict == Verdict::pass)
            d.str("certified: contraction constant kappa = " + fmt15(u.kappa) + " < 1");
        else
            d.str("uncertified: contraction constant kappa = " + fmt15(u.kappa) + " >= 1");
    } else {
        d.str("uncertified: no Lipschitz hypothesis provided");
    }
    d.key("contraction");
    if (result.contraction) {
        d.beginObject();
        d.key("kappa");
        d.num15(result.contraction->kappa);
        d.key("maxRatioFinal5");
        d.num15(result.contraction->maxRatioFinal5);
        d.key("withinSlack");
        d.boolean(result.contraction->withinSlack);
        d.endObject();
    } else {
        d.null();
    }
    d.key("notes");
    d.beginArray();
    d.str(kCaputoTerminalNote);
    d.str(kUncertifiedNote);
    d.endArray();
    d.endObject();
    return d.take();
}

std::string render_solution_csv(const SolveResult& result) {
    std::string out = "t,x,y\r\n";
    for (std::size_t k = 0; k < result.x.values.size(); ++k) {
        out += fmt15(result.x.node(k));
        out += ',';
        out += fmt15(result.x.values[k]);
        out += ',';
        out += fmt15(result.y.values[k]);
        out += "\r\n";
    }
    return out;
}

std::string render_uh_report(const ProblemSpec& spec, const UhReport& rep,
                             const std::string& command) {
    JsonDoc d;
    d.beginObject();
    emitHeader(d, spec, command);
    d.key("eps1");
    d.numExact(rep.eps1);
    d.key("eps2");
    d.numExact(rep.eps2);
    d.key("trials");
    d.integer(rep.trials);
    d.key("seed");
    d.integer(rep.seed);
    d.key("constants");
    emitUhConstants(d, rep.constants);
    d.key("bound");
    d.num15(rep.bound);
    d.key("boundX");
    d.num15(rep.boundX);
    d.key("boundY");
    d.num15(rep.boundY);
    d.key("rows");
    d.beginArray();
    for (const TrialRow& row : rep.rows) {
        d.beginObject();
        d.key("trial");
        d.integer(row.trial);
        d.key("d");
        d.num15(row.d);
        d.key("dx");
        d.num15(row.dx);
        d.key("dy");
        d.num15(row.dy);
        d.key("ratio");
        d.num15(row.ratio);
        d.key("converged");
        d.boolean(row.converged);
        d.key("pass");
        d.boolean(row.pass);
        d.endObject();
    }
    d.endArray();
    d.key("maxRatio");
    d.num15(rep.maxRatio);
    d.key("allPass");
    d.boolean(rep.allPass);
    d.key("notes");
    d.beginArray();
    d.str(kUhDirectionNote);
    d.str(kScalarBoundNote);
    d.endArray();
    d.endObject();
    return d.take();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open " + tmp + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw io_error("write to " + tmp + " failed");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw io_error("cannot rename " + tmp + " to " + path);
    }
}

}  // namespace hfl
