#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "los/certificate.hpp"
#include "los/oracle.hpp"
#include "los/polytope.hpp"
#include "los/rational.hpp"
#include "los/sequence.hpp"
#include "report.hpp"

namespace {

using lostool::Json;
using lostool::RunReport;
using lostool::Stopwatch;
using lostool::fraction;

int exit_code(const std::string& verdict) {
    if (verdict == "verified") return 0;
    if (verdict == "violation") return 1;
    return 2;
}

int finish(RunReport rep, const Stopwatch& sw) {
    rep.elapsed_ms = sw.elapsed_ms();
    std::cout << rep.to_json().dump() << "\n";
    return exit_code(rep.verdict);
}

// Uniform error handling: guard refusals and bad parameters are usage
// errors (exit 2), internal inconsistencies are reported as errors too but
// flagged as such; module findings never throw.
template <typename Body>
int guarded(RunReport rep, Body&& body) {
    const Stopwatch sw;
    try {
        body(rep);
    } catch (const los::GuardExceeded& e) {
        std::cerr << "losverify: " << e.what() << "\n";
        rep.verdict = "error";
        rep.payload = Json{{"error", e.what()}};
    } catch (const std::invalid_argument& e) {
        std::cerr << "losverify: " << e.what() << "\n";
        rep.verdict = "error";
        rep.payload = Json{{"error", e.what()}};
    } catch (const std::exception& e) {
        std::cerr << "losverify: internal error: " << e.what() << "\n";
        rep.verdict = "error";
        rep.payload = Json{{"error", e.what()}};
    }
    return finish(std::move(rep), sw);
}

Json label_json(const los::Label& l) { return Json{{"i", l.i}, {"j", l.j}}; }

Json labels_json(const std::vector<los::Label>& ls) {
    Json arr = Json::array();
    for (const los::Label& l : ls) arr.push_back(label_json(l));
    return arr;
}

Json fractions_json(const std::vector<los::Rational>& xs) {
    Json arr = Json::array();
    for (const los::Rational& x : xs) arr.push_back(fraction(x));
    return arr;
}

const char* method_name(los::Method m) {
    switch (m) {
        case los::Method::DirectFormula: return "direct_formula";
        case los::Method::TriangularSolve: return "triangular_solve";
        case los::Method::BothAgree: return "both_agree";
    }
    return "unknown";
}

Json mechanism_counts(const los::Certificate& cert) {
    std::int64_t exact = 0, tail = 0, empty = 0, fallback = 0;
    for (const los::Mechanism m : cert.mechanism) {
        switch (m) {
            case los::Mechanism::Exact: ++exact; break;
            case los::Mechanism::TailBound: ++tail; break;
            case los::Mechanism::EmptyTail: ++empty; break;
            case los::Mechanism::ExactFallback: ++fallback; break;
        }
    }
    return Json{{"exact", exact},
                {"tail_bound", tail},
                {"empty_tail", empty},
                {"exact_fallback", fallback}};
}

int run_seq(std::int64_t n, const std::string& format) {
    if (format == "csv") {
        const los::LosTable t = los::LosTable::build(n);
        t.validate();
        std::cout << "i,a,b,c\n";
        for (std::int64_t i = 1; i <= n; ++i)
            std::cout << i << ',' << t.a(i) << ',' << t.b(i) << ',' << t.c(i) << "\n";
        return 0;
    }
    RunReport rep;
    rep.command = "seq";
    rep.parameters = Json{{"n", n}, {"format", format}};
    return guarded(std::move(rep), [n](RunReport& r) {
        const los::LosTable t = los::LosTable::build(n);
        t.validate();
        Json a = Json::array(), b = Json::array(), c = Json::array();
        for (std::int64_t i = 1; i <= n; ++i) {
            a.push_back(t.a(i));
            b.push_back(t.b(i));
        }
        for (std::int64_t j = 0; j <= n; ++j) c.push_back(t.c(j));
        r.verdict = "verified";
        r.payload = Json{{"n", n}, {"a", std::move(a)}, {"b", std::move(b)},
                         {"c_from", 0},  {"c", std::move(c)}};
    });
}

int run_vertex(std::int64_t n) {
    RunReport rep;
    rep.command = "vertex";
    rep.parameters = Json{{"n", n}};
    return guarded(std::move(rep), [n](RunReport& r) {
        const los::VertexReport v = los::verify_vertex(n);
        r.verdict = (v.feasible && v.is_vertex) ? "verified" : "violation";
        r.payload = Json{{"n", n},
                         {"feasible", v.feasible},
                         {"basis_nonsingular", v.basis_nonsingular},
                         {"is_vertex", v.is_vertex},
                         {"violated", labels_json(v.violated)},
                         {"tight_count", std::ssize(v.tight)},
                         {"tight", labels_json(v.tight)}};
    });
}

int run_brute_enum(std::int64_t n, std::int64_t guard, int threads) {
    RunReport rep;
    rep.command = "brute-enum";
    rep.parameters = Json{{"n", n}, {"guard", guard}, {"threads", threads}};
    return guarded(std::move(rep), [n, guard, threads](RunReport& r) {
        los::EnumOptions opts;
        opts.guard = guard;
        opts.threads = threads;
        const std::vector<los::EnumeratedVertex> verts = los::enumerate_vertices(n, opts);
        std::int64_t index = 0;
        for (const los::EnumeratedVertex& v : verts) {
            const Json line{{"index", index++},
                            {"x", fractions_json(v.x)},
                            {"basis", labels_json(v.basis)},
                            {"tight", labels_json(v.tight)},
                            {"basis_count", v.basis_count}};
            std::cout << line.dump() << "\n";
        }
        r.verdict = "verified";
        r.payload = Json{{"n", n}, {"vertex_count", std::ssize(verts)}};
    });
}

int run_certify(std::int64_t n, const std::string& mode, bool emit_xstar) {
    RunReport rep;
    rep.command = "certify";
    rep.parameters = Json{{"n", n}, {"mode", mode}, {"emit_xstar", emit_xstar}};
    return guarded(std::move(rep), [n, &mode, emit_xstar](RunReport& r) {
        const los::CheckMode m =
            mode == "reduced" ? los::CheckMode::Reduced : los::CheckMode::Full;
        const los::Certificate cert = los::check_conjecture(n, m);
        r.verdict = cert.conjecture_holds() ? "verified" : "violation";
        r.payload = Json{{"n", n},
                         {"mode", mode},
                         {"method", method_name(cert.method)},
                         {"positive", cert.conjecture_holds()},
                         {"min_entry", fraction(cert.min_entry)},
                         {"first_nonpositive", cert.first_nonpositive
                                                   ? Json(*cert.first_nonpositive)
                                                   : Json(nullptr)},
                         {"mechanisms", mechanism_counts(cert)}};
        if (emit_xstar) r.payload["xstar"] = fractions_json(cert.xstar);
    });
}

int run_sweep(std::int64_t from, std::int64_t to, const std::string& mode, int threads) {
    RunReport rep;
    rep.command = "sweep";
    rep.parameters = Json{{"from", from}, {"to", to}, {"mode", mode}, {"threads", threads}};
    return guarded(std::move(rep), [from, to, &mode, threads](RunReport& r) {
        const los::CheckMode m =
            mode == "reduced" ? los::CheckMode::Reduced : los::CheckMode::Full;
        std::int64_t count = 0, violations = 0;
        los::sweep_conjecture(
            from, to, m,
            [&](const los::SweepRecord& rec) {
                ++count;
                if (!rec.positive) ++violations;
                const Json line{
                    {"n", rec.n},
                    {"positive", rec.positive},
                    {"min_entry", fraction(rec.min_entry)},
                    {"first_nonpositive",
                     rec.first_nonpositive ? Json(*rec.first_nonpositive) : Json(nullptr)},
                    {"exact", rec.exact_count},
                    {"tail", rec.tail_count},
                    {"trivial", rec.trivial_count},
                    {"fallback", rec.fallback_count}};
                std::cout << line.dump() << "\n";
            },
            threads);
        r.verdict = violations == 0 ? "verified" : "violation";
        r.payload = Json{{"from", from},
                         {"to", to},
                         {"mode", mode},
                         {"count", count},
                         {"violations", violations}};
    });
}

int run_duality(std::int64_t n) {
    RunReport rep;
    rep.command = "duality";
    rep.parameters = Json{{"n", n}};
    return guarded(std::move(rep), [n](RunReport& r) {
        const los::DualityReport d = los::duality_check(n);
        Json nonzero = Json::array();
        for (std::int64_t i = 1; i <= d.n; ++i) {
            const los::Rational& res = d.dual_residuals[static_cast<std::size_t>(i - 1)];
            if (sgn(res) != 0) nonzero.push_back(Json{{"i", i}, {"value", fraction(res)}});
        }
        r.verdict = d.verified() ? "verified" : "violation";
        r.payload = Json{{"n", n},
                         {"primal", fraction(d.primal_value)},
                         {"dual", fraction(d.dual_value)},
                         {"strong_duality", d.strong_duality()},
                         {"residuals_zero", d.residuals_zero()},
                         {"nonneg_ok", d.nonneg_ok},
                         {"nonzero_residuals", std::move(nonzero)}};
    });
}

int run_lemmas(std::int64_t jmax) {
    RunReport rep;
    rep.command = "lemmas";
    rep.parameters = Json{{"jmax", jmax}};
    return guarded(std::move(rep), [jmax](RunReport& r) {
        const std::vector<los::LemmaTwoRecord> recs = los::lemma_two_check(jmax);
        std::int64_t failures = 0;
        for (const los::LemmaTwoRecord& rec : recs) {
            if (!rec.ok) ++failures;
            const char* kind = rec.kind == los::LemmaTwoRecord::Case::Direct ? "direct"
                               : rec.kind == los::LemmaTwoRecord::Case::Interior
                                   ? "interior"
                                   : "boundary";
            const Json line{{"j", rec.j},
                            {"kind", kind},
                            {"margin", fraction(rec.margin)},
                            {"e_j", rec.e_j ? Json(rec.e_j->get_str()) : Json(nullptr)},
                            {"ok", rec.ok}};
            std::cout << line.dump() << "\n";
        }
        r.verdict = failures == 0 ? "verified" : "violation";
        r.payload = Json{{"jmax", jmax}, {"count", std::ssize(recs)}, {"failures", failures}};
    });
}

int run_brute(std::int64_t n, std::int64_t guard, int threads) {
    RunReport rep;
    rep.command = "brute";
    rep.parameters = Json{{"n", n}, {"guard", guard}, {"threads", threads}};
    return guarded(std::move(rep), [n, guard, threads](RunReport& r) {
        los::EnumOptions opts;
        opts.guard = guard;
        opts.threads = threads;
        const los::BruteForceResult res = los::global_max_bruteforce(n, opts);
        r.verdict = (res.best_is_alpha && res.unique) ? "verified" : "violation";
        r.payload = Json{{"n", n},
                         {"vertex_count", res.vertex_count},
                         {"best_value", fraction(res.best_value)},
                         {"best_vertex", fractions_json(res.best_vertex)},
                         {"unique", res.unique},
                         {"best_is_alpha", res.best_is_alpha}};
    });
}

int run_probe(std::int64_t n, const std::string& radius, std::int64_t samples,
              std::uint64_t seed) {
    RunReport rep;
    rep.command = "probe";
    rep.parameters =
        Json{{"n", n}, {"radius", radius}, {"samples", samples}, {"seed", seed}};
    return guarded(std::move(rep), [n, &radius, samples, seed](RunReport& r) {
        const los::Rational rad = los::parse_rational(radius);
        const los::ProbeReport p = los::local_probe(n, rad, samples, seed);
        r.verdict = p.exceeded ? "violation" : "verified";
        r.payload = Json{{"n", p.n},
                         {"samples", p.samples},
                         {"radius", fraction(p.radius)},
                         {"seed", p.seed},
                         {"accepted", p.accepted},
                         {"discarded", p.discarded},
                         {"f_alpha", fraction(p.f_alpha)},
                         {"max_f_observed", fraction(p.max_f_observed)},
                         {"exceeded", p.exceeded}};
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of the greedy-sequence certificate and its polytope"};
    app.require_subcommand(1);

    std::int64_t n = 1;
    std::string format = "json";
    std::int64_t guard = 7;
    int threads = 1;
    std::string mode = "full";
    bool emit_xstar = false;
    std::int64_t from = 1, to = 1;
    std::int64_t jmax = 1;
    std::string radius = "1/10";
    std::int64_t samples = 1000;
    std::uint64_t seed = 0;

    CLI::App* seq = app.add_subcommand("seq", "Sequence tables a, b, c");
    seq->add_option("--n", n, "Dimension")->required();
    seq->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* vertex = app.add_subcommand("vertex", "Verify the conjectured point is a vertex");
    vertex->add_option("--n", n, "Dimension")->required();

    CLI::App* brute_enum =
        app.add_subcommand("brute-enum", "Enumerate all vertices (JSON lines)");
    brute_enum->add_option("--n", n, "Dimension")->required();
    brute_enum->add_option("--guard", guard, "Refuse dimensions above this");
    brute_enum->add_option("--threads", threads, "Worker threads");

    CLI::App* certify = app.add_subcommand("certify", "Dual certificate sign check");
    certify->add_option("--n", n, "Dimension")->required();
    certify->add_option("--mode", mode, "full or reduced")
        ->check(CLI::IsMember({"full", "reduced"}));
    certify->add_flag("--emit-xstar", emit_xstar, "Include every entry in the payload");

    CLI::App* sweep = app.add_subcommand("sweep", "Certificate sweep over a range of n");
    sweep->add_option("--from", from, "First dimension")->required();
    sweep->add_option("--to", to, "Last dimension")->required();
    sweep->add_option("--mode", mode, "full or reduced")
        ->check(CLI::IsMember({"full", "reduced"}));
    sweep->add_option("--threads", threads, "Worker threads");

    CLI::App* duality = app.add_subcommand("duality", "Strong duality and residual check");
    duality->add_option("--n", n, "Dimension")->required();

    CLI::App* lemmas = app.add_subcommand("lemmas", "Block margin records (JSON lines)");
    lemmas->add_option("--jmax", jmax, "Last block index")->required();

    CLI::App* brute = app.add_subcommand("brute", "Exhaustive vertex maximum");
    brute->add_option("--n", n, "Dimension")->required();
    brute->add_option("--guard", guard, "Refuse dimensions above this");
    brute->add_option("--threads", threads, "Worker threads");

    CLI::App* probe = app.add_subcommand("probe", "Deterministic local sampling");
    probe->add_option("--n", n, "Dimension")->required();
    probe->add_option("--radius", radius, "Perturbation radius, e.g. 1/10");
    probe->add_option("--samples", samples, "Sample count");
    probe->add_option("--seed", seed, "Generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (seq->parsed()) return run_seq(n, format);
    if (vertex->parsed()) return run_vertex(n);
    if (brute_enum->parsed()) return run_brute_enum(n, guard, threads);
    if (certify->parsed()) return run_certify(n, mode, emit_xstar);
    if (sweep->parsed()) return run_sweep(from, to, mode, threads);
    if (duality->parsed()) return run_duality(n);
    if (lemmas->parsed()) return run_lemmas(jmax);
    if (brute->parsed()) return run_brute(n, guard, threads);
    if (probe->parsed()) return run_probe(n, radius, samples, seed);
    return 2;
}
