#include "hfl/problem_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hfl/errors.hpp"

namespace hfl {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
    throw parse_error("problem file: " + message, 0);
}

void requireObject(const json& v, const std::string& where) {
    if (!v.is_object()) fail(where + ": expected an object");
}

void rejectUnknown(const json& obj, const std::string& where,
                   std::initializer_list<std::string_view> allowed) {
    std::string unknown;
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const std::string_view name : allowed)
            if (item.key() == name) {
                ok = true;
                break;
            }
        if (!ok) {
            if (!unknown.empty()) unknown += ", ";
            unknown += '"' + item.key() + '"';
        }
    }
    if (!unknown.empty()) fail(where + ": unknown field " + unknown);
}

const json& require(const json& obj, const char* field, const std::string& where) {
    const auto it = obj.find(field);
    if (it == obj.end()) fail(where + ": missing required field \"" + field + "\"");
    return *it;
}

double getNumber(const json& obj, const char* field, const std::string& where) {
    const json& v = require(obj, field, where);
    if (!v.is_number()) fail(where + "." + field + ": expected a number");
    return v.get<double>();
}

std::size_t getCount(const json& obj, const char* field, const std::string& where) {
    const json& v = require(obj, field, where);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        fail(where + "." + field + ": expected a nonnegative integer");
    return static_cast<std::size_t>(v.get<long long>());
}

Expr getExpr(const json& obj, const char* field, const std::string& where) {
    const json& v = require(obj, field, where);
    if (!v.is_string()) fail(where + "." + field + ": expected an expression string");
    try {
        return Expr::parse(v.get<std::string>());
    } catch (const parse_error& e) {
        throw parse_error("problem file: " + std::string(field) + ": " + e.what(),
                          e.position);
    }
}

std::vector<BoundaryTerm> getTerms(const json& obj, const char* field,
                                   const std::string& where) {
    const json& v = require(obj, field, where);
    if (!v.is_array()) fail(where + "." + field + ": expected an array");
    std::vector<BoundaryTerm> terms;
    terms.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::ostringstream label;
        label << field << '[' << i << ']';
        const std::string termWhere = label.str();
        requireObject(v[i], termWhere);
        rejectUnknown(v[i], termWhere, {"coeff", "order", "point"});
        BoundaryTerm term{};
        term.coeff = getNumber(v[i], "coeff", termWhere);
        term.order = getNumber(v[i], "order", termWhere);
        term.point = getNumber(v[i], "point", termWhere);
        terms.push_back(term);
    }
    return terms;
}

}  // namespace

ProblemSpec parse_problem_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("problem file: ") + e.what(), e.byte);
    }
    requireObject(root, "top level");
    rejectUnknown(root, "top level",
                  {"a", "b", "alpha1", "beta1", "alpha2", "beta2", "p1", "q1", "p2",
                   "q2", "lambda1", "lambda2", "xTerms", "yTerms", "f", "g", "N",
                   "growth", "lipschitz", "solver"});

    ProblemSpec spec{};
    const std::string top = "top level";
    spec.a = getNumber(root, "a", top);
    spec.b = getNumber(root, "b", top);
    spec.alpha1 = getNumber(root, "alpha1", top);
    spec.beta1 = getNumber(root, "beta1", top);
    spec.alpha2 = getNumber(root, "alpha2", top);
    spec.beta2 = getNumber(root, "beta2", top);
    spec.p1 = getNumber(root, "p1", top);
    spec.q1 = getNumber(root, "q1", top);
    spec.p2 = getNumber(root, "p2", top);
    spec.q2 = getNumber(root, "q2", top);
    spec.lambda1 = getNumber(root, "lambda1", top);
    spec.lambda2 = getNumber(root, "lambda2", top);
    spec.xTerms = getTerms(root, "xTerms", top);
    spec.yTerms = getTerms(root, "yTerms", top);
    spec.f = getExpr(root, "f", top);
    spec.g = getExpr(root, "g", top);
    spec.N = getCount(root, "N", top);

    if (const auto it = root.find("growth"); it != root.end()) {
        const std::string where = "growth";
        requireObject(*it, where);
        rejectUnknown(*it, where, {"M1", "M2", "M3", "Mbar1", "Mbar2", "Mbar3"});
        GrowthHypothesis hyp{};
        hyp.M1 = getNumber(*it, "M1", where);
        hyp.M2 = getNumber(*it, "M2", where);
        hyp.M3 = getNumber(*it, "M3", where);
        hyp.Mbar1 = getNumber(*it, "Mbar1", where);
        hyp.Mbar2 = getNumber(*it, "Mbar2", where);
        hyp.Mbar3 = getNumber(*it, "Mbar3", where);
        spec.growth = hyp;
    }
    if (const auto it = root.find("lipschitz"); it != root.end()) {
        const std::string where = "lipschitz";
        requireObject(*it, where);
        rejectUnknown(*it, where, {"L1cal", "L2cal", "L1zero", "L2zero"});
        LipschitzHypothesis hyp{};
        hyp.L1cal = getNumber(*it, "L1cal", where);
        hyp.L2cal = getNumber(*it, "L2cal", where);
        hyp.L1zero = getNumber(*it, "L1zero", where);
        hyp.L2zero = getNumber(*it, "L2zero", where);
        spec.lipschitz = hyp;
    }
    if (const auto it = root.find("solver"); it != root.end()) {
        const std::string where = "solver";
        requireObject(*it, where);
        rejectUnknown(*it, where, {"tol", "maxIter", "theta"});
        if (it->contains("tol")) spec.solver.tol = getNumber(*it, "tol", where);
        if (it->contains("maxIter"))
            spec.solver.maxIter = getCount(*it, "maxIter", where);
        if (it->contains("theta")) spec.solver.theta = getNumber(*it, "theta", where);
    }
    return spec;
}

ProblemSpec load_problem_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("cannot read " + path);
    return parse_problem_text(buf.str());
}

}  // namespace hfl
