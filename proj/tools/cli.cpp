#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <istream>
#include <thread>

#include "diffalg/criteria.hpp"
#include "diffalg/dispersion.hpp"
#include "diffalg/error.hpp"
#include "diffalg/solver.hpp"

namespace diffalg::cli {

namespace {

constexpr long kMaxExponent = 4096;

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    RatFun expression() {
        RatFun acc = term();
        for (;;) {
            skip();
            if (peek() == '+') {
                ++i_;
                acc += term();
            } else if (peek() == '-') {
                ++i_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    std::vector<RatFun> list() {
        expect('[');
        std::vector<RatFun> out;
        skip();
        if (peek() == ']') {
            ++i_;
            return out;
        }
        for (;;) {
            out.push_back(expression());
            skip();
            if (peek() == ',') {
                ++i_;
                continue;
            }
            expect(']');
            return out;
        }
    }

    std::vector<std::vector<RatFun>> rows() {
        expect('[');
        std::vector<std::vector<RatFun>> out;
        for (;;) {
            skip();
            out.push_back(list());
            skip();
            if (peek() == ',') {
                ++i_;
                continue;
            }
            expect(']');
            return out;
        }
    }

    void finish() {
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    }

    std::size_t pos() const { return i_; }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, i_); }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }

    void expect(char c) {
        skip();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++i_;
    }

    RatFun term() {
        RatFun acc = unary();
        for (;;) {
            skip();
            if (peek() == '*') {
                ++i_;
                acc *= unary();
            } else if (peek() == '/') {
                const std::size_t at = i_++;
                RatFun d = unary();
                if (d.is_zero()) throw ParseError("division by zero", at);
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    RatFun unary() {
        skip();
        if (peek() == '-') {
            ++i_;
            return -unary();
        }
        if (peek() == '+') {
            ++i_;
            return unary();
        }
        return power();
    }

    RatFun power() {
        RatFun base = atom();
        skip();
        if (peek() != '^') return base;
        ++i_;
        skip();
        const std::size_t at = i_;
        bool neg = false;
        if (peek() == '-' || peek() == '+') {
            neg = peek() == '-';
            ++i_;
        }
        const std::string digits = integer();
        if (digits.empty()) fail("expected integer exponent");
        if (digits.size() > 5 || std::stol(digits) > kMaxExponent) throw ParseError("exponent too large", at);
        const int e = static_cast<int>(std::stol(digits));
        if (neg && base.is_zero()) throw ParseError("zero to a negative power", at);
        return pow(base, neg ? -e : e);
    }

    std::string integer() {
        const std::size_t start = i_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
        return s_.substr(start, i_ - start);
    }

    RatFun atom() {
        skip();
        const char c = peek();
        if (c == 'x') {
            ++i_;
            return RatFun::x();
        }
        if (c == '(') {
            ++i_;
            RatFun e = expression();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return RatFun(Rat(mpz_class(integer())));
        if (c == '\0') fail("unexpected end of input");
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

std::string str(const Rat& r) { return r.get_str(); }
std::string str(const RatFun& f) { return f.to_string(); }

Json ratfuns(const std::vector<RatFun>& v) {
    Json out = Json::array();
    for (const auto& f : v) out.push_back(str(f));
    return out;
}

Json op_json(const ConstLinDiffOp& L) {
    Json c = Json::array();
    for (const auto& r : L.coeffs()) c.push_back(str(r));
    return Json{{"coeffs", c}, {"text", L.to_string()}};
}

struct Result {
    std::string verdict;
    Json certificate = Json::object();
    bool verified = false;
    std::string notes;
};

class Dispatcher {
public:
    explicit Dispatcher(const Query& q) : q_(q), ds_(structure(q)) {
        opts_.degree_cap = q.degree_cap.value_or(default_degree_cap());
        if (opts_.degree_cap < 0) throw UsageError("--degree-cap must be nonnegative");
    }

    Result run() {
        const std::string& s = q_.subcommand;
        if (s == "disp") return disp();
        if (s == "standard-form") return standard_form();
        if (s == "mult-form") return mult_form();
        if (s == "solve-first-order") return solve_first();
        if (s == "solve-scalar") return solve_scalar_cmd();
        if (s == "solve-system") return solve_system_cmd();
        if (s == "telescope") return telescope();
        if (s == "da-hypergeom") return da_hypergeom();
        if (s == "da-inhomog") return da_inhomog();
        if (s == "integrability") return integrability();
        if (s == "classify-group") return classify_group();
        throw UsageError("unknown subcommand '" + s + "'");
    }

private:
    static DiffStructure structure(const Query& q) {
        if (q.case_name == "shift") {
            if (q.q) throw UsageError("--q is only meaningful with --case q");
            return DiffStructure::shift();
        }
        if (q.case_name != "q") throw UsageError("--case must be 'shift' or 'q'");
        if (!q.q) throw UsageError("--case q requires --q");
        Rat qv;
        try {
            qv = parse_rat(*q.q);
        } catch (const PreconditionError&) {
            throw UsageError("--q must be a rational literal such as 2 or 1/4; got '" + *q.q + "'");
        }
        if (qv == 0 || abs(qv.get_num()) == qv.get_den())
            throw UsageError("--q must be a nonzero rational with |q| != 1 (the q-dilation case needs q not a "
                             "root of unity); got " +
                             qv.get_str());
        return DiffStructure::q_dilation(qv);
    }

    const std::string& text(const std::string& key) const {
        auto it = q_.payload.find(key);
        if (it == q_.payload.end()) throw UsageError(q_.subcommand + " requires --" + key);
        return it->second;
    }
    bool has(const std::string& key) const { return q_.payload.count(key) > 0; }

    RatFun fun(const std::string& key) const { return parse_ratfun(text(key)); }
    RatFun fun_or(const std::string& key, const RatFun& dflt) const { return has(key) ? fun(key) : dflt; }

    static Poly as_poly(const RatFun& f, const std::string& what) {
        if (!f.is_polynomial()) throw UsageError(what + " must be a polynomial");
        return f.num();
    }

    static void bound_check(const SolveStatus s, const std::string& witness) {
        if (s == SolveStatus::BoundExceeded) throw BoundExceededError(witness);
    }

    static Json space_json(const SolutionSpace& sp) {
        Json c;
        c["g"] = sp.particular ? Json(str(sp.particular->g)) : Json(nullptr);
        Json lam = Json::array();
        if (sp.particular)
            for (const auto& l : sp.particular->lambda) lam.push_back(str(l));
        c["lambda"] = lam;
        Json hb = Json::array();
        for (const auto& h : sp.homogeneous_basis) hb.push_back(str(h.g));
        c["homogeneous_basis"] = hb;
        c["universal_denominator"] = sp.universal_denominator.to_string();
        c["exponent_window"] = Json::array({sp.window_lo, sp.window_hi});
        c["witness"] = sp.witness;
        return c;
    }

    Result scalar_result(const ScalarDiffEq& eq) {
        const SolutionSpace sp = solve_scalar(eq, opts_);
        bound_check(sp.status, sp.witness);
        Result r;
        r.certificate = space_json(sp);
        if (!sp.solved()) {
            r.verdict = "NO_SOLUTION";
            return r;
        }
        r.verdict = "SOLVED";
        r.verified = residual(eq, sp.particular->g, sp.particular->lambda).is_zero();
        for (const auto& h : sp.homogeneous_basis) r.verified = r.verified && residual(eq, h.g, h.lambda).is_zero();
        return r;
    }

    Result disp() {
        const RatFun f = fun("f");
        Result r;
        r.verdict = "COMPUTED";
        if (f.is_polynomial()) {
            const Poly p = f.num();
            const Poly other = has("g") ? as_poly(fun("g"), "--g") : p;
            const auto hs = shift_set(ds_, p, other);
            r.certificate["dispersion"] = dispersion(ds_, p);
            r.certificate["shift_set"] = hs;
            r.verified = true;
            for (auto h : hs) {
                Poly a = p, b = sigma_poly(ds_, other, h);
                if (ds_.is_q()) {
                    a = strip_x(a);
                    b = strip_x(b);
                }
                r.verified = r.verified && gcd(a, b).degree() > 0;
            }
        } else {
            r.certificate["polar_dispersion"] = polar_dispersion(ds_, f);
            r.verified = true;
        }
        return r;
    }

    Result standard_form() {
        const RatFun f = fun("f"), af = fun_or("a", RatFun(1));
        if (!af.is_constant() || af.is_zero()) throw UsageError("--a must be a nonzero constant for standard-form");
        const Rat a = af.constant_value();
        const StandardDecomp d = additive_standard_decomp(ds_, f, a);
        Result r;
        r.verdict = "COMPUTED";
        r.certificate = Json{{"standard_part", str(d.standard_part)},
                             {"g", str(d.certificate_g)},
                             {"a", str(d.twist_a)},
                             {"polar_dispersion", polar_dispersion(ds_, d.standard_part)}};
        r.verified = f == d.standard_part + apply_sigma(ds_, d.certificate_g) - RatFun(a) * d.certificate_g;
        return r;
    }

    Result mult_form() {
        const RatFun f = fun("f");
        const MultStandardForm m = multiplicative_standard_form(ds_, f);
        Result r;
        r.verdict = "COMPUTED";
        r.certificate = Json{{"standard_part", str(m.standard_part)},
                             {"g", str(m.certificate_g)},
                             {"is_standard", is_standard(ds_, m.standard_part)}};
        r.verified = f == m.standard_part * apply_sigma(ds_, m.certificate_g) / m.certificate_g;
        return r;
    }

    Result solve_first() {
        const RatFun a = fun("a");
        if (a.is_zero()) throw UsageError("--a must be nonzero");
        return scalar_result(make_scalar_eq(ds_, {-a, RatFun(1)}, {fun_or("b", RatFun())}, {Rat(1)}));
    }

    Result solve_scalar_cmd() {
        const auto coeffs = parse_list(text("coeffs"));
        if (coeffs.size() < 2 || coeffs.front().is_zero() || coeffs.back().is_zero())
            throw UsageError("--coeffs needs c0..cm with m >= 1 and c0, cm nonzero");
        return scalar_result(make_scalar_eq(ds_, coeffs, {fun_or("rhs", RatFun())}, {Rat(1)}));
    }

    Result solve_system_cmd() {
        const MatrixRF M = parse_matrix(text("matrix"));
        std::vector<RatFun> c = has("rhs") ? parse_list(text("rhs")) : std::vector<RatFun>(M.size());
        if (c.size() != M.size()) throw UsageError("--rhs length must match the matrix size");
        const VectorSolutionSpace sp = solve_system(ds_, M, c, opts_);
        bound_check(sp.status, sp.witness);
        Result r;
        Json traces = Json::array();
        for (const auto& t : sp.traces) {
            Json co = Json::array();
            for (const auto& p : t.coeffs) co.push_back(p.to_string());
            traces.push_back(Json{{"coeffs", co}, {"rhs", t.rhs_basis.empty() ? "0" : str(t.rhs_basis[0])}});
        }
        r.certificate["v"] = sp.particular ? ratfuns(*sp.particular) : Json(nullptr);
        Json hb = Json::array();
        for (const auto& h : sp.homogeneous_basis) hb.push_back(ratfuns(h));
        r.certificate["homogeneous_basis"] = hb;
        r.certificate["failed_coordinate"] = sp.failed_coordinate ? Json(*sp.failed_coordinate) : Json(nullptr);
        r.certificate["witness"] = sp.witness;
        r.certificate["traces"] = traces;
        if (!sp.solved()) {
            r.verdict = "NO_SOLUTION";
            return r;
        }
        r.verdict = "SOLVED";
        std::vector<RatFun> lhs(M.size());
        for (std::size_t i = 0; i < M.size(); ++i) lhs[i] = apply_sigma(ds_, (*sp.particular)[i]);
        r.verified = lhs == [&] {
            auto mv = M.apply(*sp.particular);
            for (std::size_t i = 0; i < mv.size(); ++i) mv[i] += c[i];
            return mv;
        }();
        return r;
    }

    Result telescope() {
        const auto a = parse_list(text("a"));
        if (a.empty()) throw UsageError("--a needs at least one function");
        const int s = q_.order_bound.value_or(2);
        if (s < 0) throw UsageError("--order-bound must be nonnegative");
        const auto t = q_.multiplicative ? mult_dependence_test(ds_, a, s, opts_) : find_telescoper(ds_, a, s, opts_);
        Result r;
        r.certificate["order_bound"] = s;
        r.notes = "absence is only certified up to the given order bound; no a priori bound is known in general";
        if (!t) {
            r.verdict = "NO_TELESCOPER_AT_ORDER";
            return r;
        }
        r.verdict = "TELESCOPER_FOUND";
        Json ops = Json::array();
        for (const auto& L : t->operators) ops.push_back(op_json(L));
        r.certificate["operators"] = ops;
        r.certificate["g"] = str(t->certificate_g);
        std::vector<RatFun> inputs = a;
        if (q_.multiplicative)
            for (auto& b : inputs) b = apply_derivation(ds_, b) / b;
        r.verified = apply_telescoper(ds_, *t, inputs) == apply_sigma(ds_, t->certificate_g) - t->certificate_g;
        return r;
    }

    static std::string da_code(DAStatus s) {
        switch (s) {
        case DAStatus::DifferentiallyAlgebraic: return "DIFFERENTIALLY_ALGEBRAIC";
        case DAStatus::DifferentiallyTranscendental: return "DIFFERENTIALLY_TRANSCENDENTAL";
        case DAStatus::RationalSolutionExists: return "RATIONAL_SOLUTION_EXISTS";
        }
        return "?";
    }

    static Json da_cert(const DAVerdict& v) {
        Json c = Json::object();
        if (!v.certificate) return c;
        const auto& k = *v.certificate;
        if (k.f) c["f"] = str(*k.f);
        if (k.c) c["c"] = str(*k.c);
        if (k.n_or_r) c["n_or_r"] = *k.n_or_r;
        if (k.d) c["d"] = str(*k.d);
        return c;
    }

    Result da_hypergeom() {
        const RatFun b = fun("b");
        const DAVerdict v = hypergeom_da_test(ds_, b);
        Result r{da_code(v.status), da_cert(v), false, v.hypothesis_notes};
        if (v.status == DAStatus::DifferentiallyAlgebraic) {
            const auto& k = *v.certificate;
            RatFun rebuilt = RatFun(*k.c) * apply_sigma(ds_, *k.f) / *k.f;
            if (k.n_or_r) rebuilt *= pow(RatFun::x(), static_cast<int>(*k.n_or_r));
            r.verified = rebuilt == b;
        }
        return r;
    }

    Result da_inhomog() {
        const RatFun a = fun("a"), b = fun("b");
        const DAVerdict v = inhomog_da_classify(ds_, a, b, opts_);
        Result r{da_code(v.status), da_cert(v), false, v.hypothesis_notes};
        if (v.status != DAStatus::DifferentiallyTranscendental) {
            const auto& k = *v.certificate;
            RatFun check = apply_sigma(ds_, *k.f) - a * *k.f;
            if (k.d) check += RatFun(*k.d) * pow(RatFun::x(), static_cast<int>(*k.n_or_r));
            r.verified = check == b;
        }
        return r;
    }

    Result integrability() {
        MatrixRF A(1);
        if (has("matrix")) {
            A = parse_matrix(text("matrix"));
        } else {
            const auto p = parse_list(text("coeffs"));
            if (p.size() != 3 || p[2].is_zero())
                throw UsageError("--coeffs for integrability takes [p0, p1, p2] with p2 nonzero");
            A = MatrixRF({{RatFun(), RatFun(1)}, {-p[0] / p[2], -p[1] / p[2]}});
        }
        if (A.det().is_zero()) throw UsageError("--matrix must be invertible over Q(x)");
        const IntegrabilityResult res = integrability_test(ds_, A, opts_);
        Result r;
        r.notes = res.hypothesis_notes;
        Json co = Json::array();
        for (const auto& p : res.scalar_trace.coeffs) co.push_back(p.to_string());
        r.certificate["trace_coordinate"] = res.trace_coordinate;
        r.certificate["scalar_trace"] =
            Json{{"coeffs", co},
                 {"rhs", res.scalar_trace.rhs_basis.empty() ? "0" : str(res.scalar_trace.rhs_basis[0])}};
        r.certificate["witness"] = res.witness;
        if (!res.constant_conjugate) {
            r.verdict = "NOT_CONSTANT_CONJUGATE";
            return r;
        }
        r.verdict = "CONSTANT_CONJUGATE";
        r.certificate["B"] = res.B->to_string();
        r.verified = integrability_holds(ds_, A, *res.B);
        return r;
    }

    Result classify_group() {
        const RatFun f = fun("f");
        const GroupClass g = group_classify_inhomog_sum(ds_, f, opts_);
        Result r;
        r.notes = g.hypothesis_notes;
        if (g.h) r.certificate["h"] = str(*g.h);
        if (g.c) r.certificate["c"] = str(*g.c);
        switch (g.kind) {
        case GroupKind::TrivialGroup:
            r.verdict = "TRIVIAL";
            r.verified = apply_sigma(ds_, *g.h) - *g.h == f;
            break;
        case GroupKind::ConstantsGa:
            r.verdict = "CONSTANTS_GA";
            r.verified = apply_sigma(ds_, *g.h) - *g.h + RatFun(*g.c) == f;
            break;
        case GroupKind::FullGa: r.verdict = "FULL_GA"; break;
        }
        return r;
    }

    const Query& q_;
    DiffStructure ds_;
    SolveOptions opts_;
};

Json error_json(const std::string& kind, const std::string& message, std::optional<std::size_t> position = {}) {
    Json e{{"kind", kind}, {"message", message}};
    if (position) e["position"] = *position;
    return Json{{"error", e}};
}

} // namespace

RatFun parse_ratfun(const std::string& text) {
    Parser p(text);
    RatFun f = p.expression();
    p.finish();
    return f;
}

std::vector<RatFun> parse_list(const std::string& text) {
    Parser p(text);
    auto v = p.list();
    p.finish();
    return v;
}

MatrixRF parse_matrix(const std::string& text) {
    Parser p(text);
    auto rows = p.rows();
    p.finish();
    for (const auto& r : rows)
        if (r.size() != rows.size()) throw ParseError("matrix must be square", 0);
    return MatrixRF(rows);
}

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{
        "disp",          "standard-form", "mult-form",    "solve-first-order", "solve-scalar",  "solve-system",
        "telescope",     "da-hypergeom",  "da-inhomog",   "integrability",     "classify-group"};
    return names;
}

std::int64_t default_degree_cap() {
    const char* env = std::getenv("DIFFALG_DEGREE_CAP");
    if (!env || !*env) return kDefaultDegreeCap;
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (*end != '\0' || v < 0) return kDefaultDegreeCap;
    return v;
}

Query query_from_json(const Json& obj) {
    if (!obj.is_object()) throw UsageError("query must be a JSON object");
    Query q;
    auto text_of = [](const Json& v, const std::string& key) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        throw UsageError("field '" + key + "' must be a string");
    };
    for (const auto& [key, v] : obj.items()) {
        if (key == "subcommand") {
            q.subcommand = text_of(v, key);
        } else if (key == "case") {
            q.case_name = text_of(v, key);
        } else if (key == "q") {
            q.q = text_of(v, key);
        } else if (key == "order_bound" || key == "order-bound") {
            if (!v.is_number_integer()) throw UsageError("order_bound must be an integer");
            q.order_bound = v.get<int>();
        } else if (key == "degree_cap" || key == "degree-cap") {
            if (!v.is_number_integer()) throw UsageError("degree_cap must be an integer");
            q.degree_cap = v.get<std::int64_t>();
        } else if (key == "multiplicative") {
            if (!v.is_boolean()) throw UsageError("multiplicative must be a boolean");
            q.multiplicative = v.get<bool>();
        } else if (key == "a" || key == "b" || key == "f" || key == "g" || key == "matrix" || key == "coeffs" ||
                   key == "rhs") {
            q.payload[key] = text_of(v, key);
        } else {
            throw UsageError("unknown field '" + key + "'");
        }
    }
    if (q.subcommand.empty()) throw UsageError("query needs a 'subcommand'");
    return q;
}

Outcome run_query(const Query& q) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Dispatcher d(q);
        Result r = d.run();
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
        Json rep;
        rep["subcommand"] = q.subcommand;
        rep["verdict"] = r.verdict;
        rep["certificate"] = std::move(r.certificate);
        rep["substitution_verified"] = r.verified;
        rep["hypothesis_notes"] = r.notes;
        rep["timing_ms"] = static_cast<std::int64_t>(ms.count());
        return {rep, 0};
    } catch (const ParseError& e) {
        return {error_json("parse_error", e.what(), e.position()), 1};
    } catch (const UsageError& e) {
        return {error_json("usage_error", e.what()), 1};
    } catch (const PreconditionError& e) {
        return {error_json("usage_error", e.what()), 1};
    } catch (const BoundExceededError& e) {
        return {error_json("bound_exceeded", e.what()), 2};
    } catch (const std::exception& e) {
        return {error_json("invariant_violation", e.what()), 3};
    }
}

std::vector<Outcome> run_batch(std::istream& in, unsigned jobs) {
    std::vector<std::string> lines;
    std::vector<std::size_t> numbers;
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
        lines.push_back(line);
        numbers.push_back(n);
    }
    std::vector<Outcome> out(lines.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < lines.size();) {
            try {
                out[i] = run_query(query_from_json(Json::parse(lines[i])));
            } catch (const Json::parse_error& e) {
                out[i] = {error_json("parse_error", std::string("malformed JSON: ") + e.what(), e.byte), 1};
            } catch (const UsageError& e) {
                out[i] = {error_json("usage_error", e.what()), 1};
            }
            if (out[i].report.contains("error")) out[i].report["error"]["line"] = numbers[i];
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(lines.size(), 1))));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

} // namespace diffalg::cli
