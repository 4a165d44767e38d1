// Command-line front end: kernel/transform/op/moments/table/specfun wrappers
// plus the one-shot `verify` identity suite. JSON on stdout, diagnostics on
// stderr. Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "genfock/bargmann.hpp"
#include "genfock/coeffspace.hpp"
#include "genfock/json_io.hpp"
#include "genfock/kernels.hpp"
#include "genfock/moments.hpp"
#include "genfock/operators.hpp"
#include "genfock/specfun.hpp"
#include "genfock/verify.hpp"

namespace {

using nlohmann::json;
using namespace genfock;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct GlobalOpts {
    int terms = 64;
    int nodes = 200;
    std::uint64_t seed = 1;
    std::string out;
    bool pretty = false;
};

Complex parse_complex(const std::string& s) {
    std::istringstream in(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw CLI::ValidationError("complex", "expected RE or RE,IM: " + s);
    if (in >> comma) {
        if (comma != ',' || !(in >> im))
            throw CLI::ValidationError("complex", "expected RE,IM: " + s);
    }
    std::string rest;
    if (in >> rest) throw CLI::ValidationError("complex", "trailing input: " + s);
    return Complex(re, im);
}

Space parse_space(const std::string& s) {
    if (s == "fock") return Space::Fock;
    if (s == "hp") return Space::Hp;
    if (s == "fp") return Space::Fp;
    throw CLI::ValidationError("space", "expected fock|hp|fp: " + s);
}

std::string rational_str(const Rational& r) {
    std::ostringstream out;
    out << numerator(r);
    if (denominator(r) != 1) out << "/" << denominator(r);
    return out.str();
}

/// Buffer fully, then write in one shot; an unopenable target leaves no file.
void emit(const json& j, const GlobalOpts& g) {
    const std::string text = j.dump(g.pretty ? 2 : -1) + "\n";
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + g.out + " for writing");
    f << text;
    f.flush();
    if (!f) {
        f.close();
        std::remove(g.out.c_str());
        throw std::runtime_error("write failed for " + g.out);
    }
}

// ---------------------------------------------------------------------------

int cmd_verify(const GlobalOpts& g, const std::string& profile, bool timings) {
    verify::VerifyOptions opts;
    if (profile == "quick")
        opts.profile = verify::Profile::Quick;
    else if (profile == "full")
        opts.profile = verify::Profile::Full;
    else
        throw CLI::ValidationError("profile", "expected quick|full: " + profile);
    opts.seed = g.seed;

    const auto results = verify::run_verify(opts);

    json checks = json::array();
    for (const auto& r : results) {
        json c;
        c["check_id"] = r.check_id;
        c["ref"] = r.ref;
        c["params"] = r.params;
        c["metric"] = r.metric;
        c["threshold"] = r.threshold;
        c["pass"] = r.pass;
        // Wall-clock noise would break the byte-identical report contract,
        // so per-check timings are opt-in.
        if (timings) c["runtime_ms"] = r.runtime_ms;
        checks.push_back(std::move(c));
    }
    json report;
    report["profile"] = profile;
    report["seed"] = g.seed;
    report["checks"] = std::move(checks);
    const bool ok = verify::all_pass(results);
    report["all_pass"] = ok;
    emit(report, g);
    if (!ok) {
        for (const auto& r : results)
            if (!r.pass)
                std::cerr << "FAILED " << r.check_id << ": metric " << r.metric
                          << " > threshold " << r.threshold << "\n";
        return kExitCheckFailure;
    }
    return kExitOk;
}

int cmd_kernel(const GlobalOpts& g, const std::string& space, int p, const std::string& zs,
               const std::string& ws) {
    const KernelSpec spec(parse_space(space), p);
    const auto v = kernels::kernel_eval(spec, parse_complex(zs), parse_complex(ws), g.terms);
    json j;
    j["series"] = complex_to_json(v.series_value);
    j["closed"] = complex_to_json(v.closed_value);
    j["gap"] = v.abs_gap;
    j["terms_used"] = v.terms_used;
    j["last_term"] = v.last_term_mag;
    emit(j, g);
    return kExitOk;
}

bargmann::L2Function parse_phi(const std::string& spec) {
    if (spec == "gaussian")
        return bargmann::L2Function::from_callable(
            [](double x) { return Complex(std::exp(-0.5 * x * x)); });
    if (spec.rfind("hermite_n:", 0) == 0)
        return bargmann::L2Function::hermite_mode(std::stoi(spec.substr(10)));
    if (spec.rfind("hermite:", 0) == 0)
        return bargmann::L2Function::from_hermite(load_coeffseq(spec.substr(8)));
    throw CLI::ValidationError("phi", "expected hermite:FILE | gaussian | hermite_n:K: " + spec);
}

int cmd_transform(const GlobalOpts& g, const std::string& kind_s, int p,
                  const std::string& phi_s, const std::string& zs) {
    bargmann::TransformKind kind;
    if (kind_s == "b")
        kind = bargmann::TransformKind::B;
    else if (kind_s == "bp")
        kind = bargmann::TransformKind::Bp;
    else if (kind_s == "sbp")
        kind = bargmann::TransformKind::SBp;
    else
        throw CLI::ValidationError("kind", "expected b|bp|sbp: " + kind_s);

    const auto quad = bargmann::QuadratureRule::gauss_hermite(g.nodes);
    const auto phi = parse_phi(phi_s);
    const auto rep = bargmann::transform_report(kind, p, phi, parse_complex(zs), g.terms, quad);
    if (rep.tail_warning)
        std::cerr << "warning: Hermite tail unresolved at truncation " << g.terms
                  << " (|c_N|/max = " << rep.tail_ratio << ")\n";
    json j;
    j["value"] = complex_to_json(rep.value);
    j["route_gap"] = rep.route_gap;
    j["tail_diag"] = {{"ratio", rep.tail_ratio}, {"warning", rep.tail_warning}};
    emit(j, g);
    return kExitOk;
}

int cmd_op(const GlobalOpts& g, const std::string& expr, const std::string& input, int trunc,
           bool matrix) {
    const ops::WeightedShiftOp op = ops::parse_op_expr(expr);
    if (matrix) {
        const ops::OpMatrix m = ops::OpMatrix::of(op, trunc);
        std::ostringstream csv;
        for (int i = 0; i <= trunc; ++i) {
            for (int j = 0; j <= trunc; ++j) {
                if (j) csv << ",";
                csv << rational_str(m.at(i, j));
            }
            csv << "\n";
        }
        if (g.out.empty()) {
            std::cout << csv.str();
        } else {
            std::ofstream f(g.out, std::ios::binary | std::ios::trunc);
            if (!f) throw std::runtime_error("cannot open " + g.out + " for writing");
            f << csv.str();
        }
        return kExitOk;
    }
    if (input.empty())
        throw CLI::ValidationError("input", "--input FILE.json required unless --matrix");
    CoeffSeq f = load_coeffseq(input);
    if (trunc != f.truncation()) {
        CoeffSeq g2 = CoeffSeq::zero(trunc);
        for (int n = 0; n <= std::min(trunc, f.truncation()); ++n)
            g2.coeffs[static_cast<size_t>(n)] = f.coeffs[static_cast<size_t>(n)];
        f = std::move(g2);
    }
    bool dropped = false;
    const CoeffSeq result = op.apply(f, &dropped);
    if (dropped)
        std::cerr << "warning: degree-raising output beyond truncation " << trunc
                  << " was dropped\n";
    emit(coeffseq_to_json(result), g);
    return kExitOk;
}

moments::MomentSeq parse_seq(const std::string& spec) {
    if (spec.rfind("hp:", 0) == 0) return moments::moment_seq_hp(std::stoi(spec.substr(3)));
    if (spec.rfind("fp:", 0) == 0) return moments::moment_seq_fp(std::stoi(spec.substr(3)));
    if (spec.rfind("file:", 0) == 0) {
        const std::string path = spec.substr(5);
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        json j;
        in >> j;
        if (!j.is_object() || !j.contains("values") || !j["values"].is_array())
            throw CLI::ValidationError("seq", "moment file needs {\"values\": [...]}");
        std::vector<Rational> vals;
        for (const auto& e : j["values"]) {
            if (!e.is_number()) throw CLI::ValidationError("seq", "values must be numbers");
            vals.emplace_back(e.get<double>());  // doubles are exact rationals
        }
        return moments::moment_seq_values(std::move(vals), "file:" + path);
    }
    throw CLI::ValidationError("seq", "expected hp:P | fp:P | file:FILE.json: " + spec);
}

int cmd_moments(const GlobalOpts& g, const std::string& seq_s, int nmax,
                const std::string& mode_s) {
    const auto seq = parse_seq(seq_s);
    const bool exact = mode_s == "exact";
    if (!exact && mode_s != "float")
        throw CLI::ValidationError("mode", "expected exact|float: " + mode_s);

    json reports = json::array();
    bool all = true;
    for (int N = 0; N <= nmax; ++N) {
        for (bool shifted : {false, true}) {
            const auto rep = moments::psd_check(
                moments::hankel(seq, N, shifted),
                exact ? moments::PsdMode::ExactMinors : moments::PsdMode::FloatEig);
            json r;
            r["kind"] = shifted ? "H(Es)" : "H(s)";
            r["order"] = N;
            r["psd"] = rep.psd;
            if (exact) {
                json minors = json::array();
                for (const auto& d : rep.leading_minors) minors.push_back(rational_str(d));
                r["leading_minors"] = std::move(minors);
            } else {
                r["min_eigenvalue"] = rep.min_eigenvalue;
            }
            all = all && rep.psd;
            reports.push_back(std::move(r));
        }
    }
    json j;
    j["seq"] = seq.label;
    j["nmax"] = nmax;
    j["mode"] = mode_s;
    j["reports"] = std::move(reports);
    j["stieltjes"] = all;
    emit(j, g);
    return kExitOk;
}

int cmd_table(const GlobalOpts& g, const std::string& kind, int p, int nmax) {
    Space sp;
    if (kind == "adjoint_hp")
        sp = Space::Hp;
    else if (kind == "adjoint_fp")
        sp = Space::Fp;
    else
        throw CLI::ValidationError("kind", "expected adjoint_hp|adjoint_fp: " + kind);
    const KernelSpec spec(sp, p);
    const auto r0s = ops::adjoint_of(ops::BaseOp::R0, spec);
    const auto dzs = ops::adjoint_of(ops::BaseOp::Dz, spec);
    const auto mzs = ops::adjoint_of(ops::BaseOp::Mz, spec);
    const auto is = ops::adjoint_of(ops::BaseOp::I, spec);

    if (g.pretty) {
        std::ostringstream outp;
        outp << "n\tR0*\tD*\tMz*\tI*\n";
        for (int n = 0; n <= nmax; ++n)
            outp << n << "\t" << rational_str(r0s.weight_at(n)) << "\t"
                 << rational_str(dzs.weight_at(n)) << "\t" << rational_str(mzs.weight_at(n))
                 << "\t" << rational_str(is.weight_at(n)) << "\n";
        std::cout << outp.str();
        return kExitOk;
    }
    json rows = json::array();
    for (int n = 0; n <= nmax; ++n) {
        rows.push_back({{"n", n},
                        {"R0", rational_str(r0s.weight_at(n))},
                        {"D", rational_str(dzs.weight_at(n))},
                        {"Mz", rational_str(mzs.weight_at(n))},
                        {"I", rational_str(is.weight_at(n))}});
    }
    json j;
    j["kind"] = kind;
    j["p"] = p;
    j["rows"] = std::move(rows);
    emit(j, g);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted Fock-type spaces: kernels, operators, transforms, moments"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--terms", g.terms, "series truncation")->capture_default_str();
    app.add_option("--nodes", g.nodes, "quadrature node count")->capture_default_str();
    app.add_option("--seed", g.seed, "PRNG seed")->capture_default_str();
    app.add_option("--out", g.out, "write JSON output to this path instead of stdout");
    app.add_flag("--pretty", g.pretty, "indent JSON / render text tables");
    app.fallthrough();

    auto* verify_cmd = app.add_subcommand("verify", "run the full identity suite");
    std::string profile = "quick";
    bool timings = false;
    verify_cmd->add_option("--profile", profile, "quick|full")->capture_default_str();
    verify_cmd->add_flag("--timings", timings, "include per-check runtimes (not byte-stable)");

    auto* kernel_cmd = app.add_subcommand("kernel", "evaluate a reproducing kernel two ways");
    std::string space = "hp", zs = "0,0", ws = "0,0";
    int p = 1;
    kernel_cmd->add_option("--space", space, "fock|hp|fp")->capture_default_str();
    kernel_cmd->add_option("--p", p, "weight exponent")->capture_default_str();
    kernel_cmd->add_option("--z", zs, "RE,IM")->capture_default_str();
    kernel_cmd->add_option("--w", ws, "RE,IM")->capture_default_str();

    auto* transform_cmd = app.add_subcommand("transform", "apply a Bargmann-type transform");
    std::string tkind = "b", phi = "gaussian", tz = "0,0";
    int tp = 0;
    transform_cmd->add_option("--kind", tkind, "b|bp|sbp")->capture_default_str();
    transform_cmd->add_option("--p", tp, "weight exponent")->capture_default_str();
    transform_cmd->add_option("--phi", phi, "hermite:FILE.json | gaussian | hermite_n:K")
        ->capture_default_str();
    transform_cmd->add_option("--z", tz, "RE,IM")->capture_default_str();

    auto* op_cmd = app.add_subcommand("op", "apply an operator expression to a CoeffSeq");
    std::string expr, input;
    int trunc = 64;
    bool matrix = false;
    op_cmd->add_option("--expr", expr, "operator expression, e.g. \"adj(R0,hp,1)*I^2\"")
        ->required();
    op_cmd->add_option("--input", input, "CoeffSeq JSON file");
    op_cmd->add_option("--trunc", trunc, "working truncation")->capture_default_str();
    op_cmd->add_flag("--matrix", matrix, "print the finite section as CSV instead");

    auto* moments_cmd = app.add_subcommand("moments", "Hankel PSD certificates");
    std::string seq = "hp:1", mode = "exact";
    int nmax = 6;
    moments_cmd->add_option("--seq", seq, "hp:P | fp:P | file:FILE.json")->capture_default_str();
    moments_cmd->add_option("--nmax", nmax, "largest Hankel order")->capture_default_str();
    moments_cmd->add_option("--mode", mode, "exact|float")->capture_default_str();

    auto* table_cmd = app.add_subcommand("table", "adjoint weight tables per degree");
    std::string tabkind = "adjoint_hp";
    int tabp = 1, tabn = 8;
    table_cmd->add_option("--kind", tabkind, "adjoint_hp|adjoint_fp")->capture_default_str();
    table_cmd->add_option("--p", tabp, "weight exponent")->capture_default_str();
    table_cmd->add_option("--nmax", tabn, "last degree")->capture_default_str();

    auto* sf = app.add_subcommand("specfun", "special-function scalar evaluations");
    sf->require_subcommand(1);
    auto* sf_hermite = sf->add_subcommand("hermite", "He_n(z)");
    auto* sf_xi = sf->add_subcommand("xi", "normalized Hermite function xi_n(x)");
    auto* sf_stirling = sf->add_subcommand("stirling", "S(n, k)");
    auto* sf_touchard = sf->add_subcommand("touchard", "T_n(z)");
    auto* sf_poch = sf->add_subcommand("pochhammer", "(a)_k");
    auto* sf_hyper = sf->add_subcommand("hyper", "2pF2p(1..;2..; z) partial sum");
    int sn = 0, sk = 0;
    double sx = 0.0, sa = 1.0;
    std::string sz = "0,0";
    sf_hermite->add_option("--n", sn)->required();
    sf_hermite->add_option("--z", sz)->required();
    sf_xi->add_option("--n", sn)->required();
    sf_xi->add_option("--x", sx)->required();
    sf_stirling->add_option("--n", sn)->required();
    sf_stirling->add_option("--k", sk)->required();
    sf_touchard->add_option("--n", sn)->required();
    sf_touchard->add_option("--z", sz)->required();
    sf_poch->add_option("--a", sa)->required();
    sf_poch->add_option("--k", sk)->required();
    sf_hyper->add_option("--p", sn)->required();
    sf_hyper->add_option("--z", sz)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (verify_cmd->parsed()) return cmd_verify(g, profile, timings);
        if (kernel_cmd->parsed()) return cmd_kernel(g, space, p, zs, ws);
        if (transform_cmd->parsed()) return cmd_transform(g, tkind, tp, phi, tz);
        if (op_cmd->parsed()) return cmd_op(g, expr, input, trunc, matrix);
        if (moments_cmd->parsed()) return cmd_moments(g, seq, nmax, mode);
        if (table_cmd->parsed()) return cmd_table(g, tabkind, tabp, tabn);
        if (sf->parsed()) {
            json j;
            if (sf_hermite->parsed())
                j = complex_to_json(specfun::hermite_He(sn, parse_complex(sz)));
            else if (sf_xi->parsed())
                j = specfun::hermite_xi(sn, sx);
            else if (sf_stirling->parsed())
                j = specfun::stirling2(sn, sk).str();
            else if (sf_touchard->parsed())
                j = complex_to_json(specfun::touchard(sn, parse_complex(sz)));
            else if (sf_poch->parsed())
                j = specfun::pochhammer(sa, sk);
            else if (sf_hyper->parsed())
                j = complex_to_json(specfun::hyper_1s2s(sn, parse_complex(sz), g.terms));
            emit(j, g);
            return kExitOk;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
