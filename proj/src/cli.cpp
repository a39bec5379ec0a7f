#include "qsubfactor/cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "qsubfactor/corep.hpp"
#include "qsubfactor/error.hpp"
#include "qsubfactor/type3.hpp"
#include "qsubfactor/verify.hpp"
#include "qsubfactor/wassermann.hpp"

namespace qsf::cli {

namespace {

struct Options {
    std::string rep, rep2, sigma, format = "text", target = "all";
    std::optional<double> q;
    int n = 4;
    int max_n = 12;
    double tol = 1e-8;
    bool so3 = false;
    bool dot = false;
};

using json = nlohmann::json;

std::string num(double x) { return fmt::format("{:.12g}", x); }

void emit_json(std::ostream& out, json j) {
    j["schema"] = 1;
    out << j.dump() << '\n';
}

class Runner {
public:
    Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

    CorepDecomp rep(const std::string& s, const char* flag) const {
        if (s.empty()) throw DomainError(fmt::format("{} is required", flag));
        return parse_rep(s, ParseOptions{o_.so3});
    }
    double q() const {
        if (!o_.q) throw DomainError("--q is required");
        require_q(*o_.q);
        return *o_.q;
    }
    bool json_out() const { return o_.format == "json"; }

    int fuse_cmd() {
        const auto r = fuse(rep(o_.rep, "--rep"), rep(o_.rep2, "--rep2"));
        if (json_out())
            emit_json(out_, {{"rep", render(r)}, {"blocks", to_json(r)["blocks"]}});
        else
            out_ << render(r) << '\n';
        return ok;
    }

    int poly_cmd(const LaurentPoly& p) {
        std::optional<double> v;
        if (o_.q) v = eval(p, q());
        if (json_out()) {
            json j = {{"poly", to_string(p)}};
            if (v) j["value"] = *v;
            emit_json(out_, j);
        } else {
            out_ << "poly   " << to_string(p) << '\n';
            if (v) out_ << "value  " << num(*v) << '\n';
        }
        return ok;
    }

    int tower_cmd() {
        if (o_.n < 0) throw DomainError("--n must be non-negative");
        if (o_.n > o_.max_n) throw DomainError(fmt::format("--n {} exceeds the depth cap {} (raise with --max-n)", o_.n, o_.max_n));
        const auto t = jones_tower(rep(o_.rep, "--rep"), o_.n);
        std::optional<double> qv;
        if (o_.q) qv = q();
        if (o_.dot) {
            out_ << to_dot(t);
        } else if (json_out()) {
            emit_json(out_, to_json(t, qv ? &*qv : nullptr));
        } else {
            out_ << fmt::format("{:>3} {:>12}  {}\n", "k", "dim End", "rho_k");
            for (std::size_t k = 0; k < t.rhos.size(); ++k)
                out_ << fmt::format("{:>3} {:>12}  {}\n", k, t.end_dim(k), render(t.rhos[k]));
            out_ << "index  " << to_string(t.index_poly);
            if (qv) out_ << " = " << num(eval(t.index_poly, *qv));
            out_ << '\n';
        }
        return ok;
    }

    int type3_cmd() {
        const auto pi = rep(o_.rep, "--rep");
        const double qv = q();
        const auto report = type3_report(pi, qv);
        std::optional<double> comp;
        if (!o_.sigma.empty()) comp = verify_composition(pi, ToyAction{rep(o_.sigma, "--sigma"), qv});
        if (json_out()) {
            json j = to_json(report);
            if (comp) {
                j["sigma"] = o_.sigma;
                j["composition_residual"] = *comp;
            }
            emit_json(out_, j);
        } else {
            out_ << render_table(report);
            if (comp) out_ << "composition_residual " << fmt::format("{:.3e}", *comp) << '\n';
        }
        return comp && *comp > o_.tol ? tolerance : ok;
    }

    int verify_cmd() {
        VerifyOptions vo;
        vo.q = o_.q;
        if (vo.q) require_q(*vo.q);
        const auto results = run_verify(o_.target, vo);
        const bool pass = std::all_of(results.begin(), results.end(), [&](const auto& c) { return c.residual <= o_.tol; });
        if (json_out()) {
            json j = to_json(results, o_.tol);
            j["target"] = o_.target;
            emit_json(out_, j);
        } else {
            std::size_t failed = 0;
            for (const auto& c : results) {
                const bool p = c.residual <= o_.tol;
                failed += p ? 0 : 1;
                out_ << fmt::format("{} {:<32} {:.3e}  {}\n", p ? "PASS" : "FAIL", c.name, c.residual, c.detail);
            }
            out_ << fmt::format("{} of {} checks within tol {:g}\n", results.size() - failed, results.size(), o_.tol);
        }
        return pass ? ok : tolerance;
    }

private:
    const Options& o_;
    std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Invariants of Wassermann-type subfactors from SU_q(2)", "qsubfactor"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    auto add_common = [&](CLI::App* c) {
        c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        c->add_flag("--so3", o.so3, "Reject half-integer spins (SO_q(3))");
        c->add_option("--q", o.q, "Deformation parameter, 0 < q < 1");
    };
    auto* fuse_c = app.add_subcommand("fuse", "Tensor product decomposition of two representations");
    fuse_c->add_option("--rep", o.rep, "First representation, e.g. \"2x1/2 + 1\"")->required();
    fuse_c->add_option("--rep2", o.rep2, "Second representation")->required();
    add_common(fuse_c);

    auto* dim_c = app.add_subcommand("dim", "Quantum dimension");
    dim_c->add_option("--rep", o.rep, "Representation")->required();
    add_common(dim_c);

    auto* index_c = app.add_subcommand("index", "Jones index (dim_q)^2");
    index_c->add_option("--rep", o.rep, "Representation")->required();
    add_common(index_c);

    auto* tower_c = app.add_subcommand("tower", "Jones tower and relative commutant dimensions");
    tower_c->add_option("--rep", o.rep, "Representation")->required();
    tower_c->add_option("--n", o.n, "Tower depth")->capture_default_str();
    tower_c->add_option("--max-n", o.max_n, "Depth cap")->capture_default_str();
    tower_c->add_flag("--dot", o.dot, "Emit the Bratteli diagram as Graphviz");
    add_common(tower_c);

    auto* type3_c = app.add_subcommand("type3", "Flow of weights data and type II decision");
    type3_c->add_option("--rep", o.rep, "Representation")->required();
    type3_c->add_option("--sigma", o.sigma, "Toy action Ad u(sigma); enables the composition check");
    type3_c->add_option("--tol", o.tol, "Residual tolerance")->capture_default_str();
    add_common(type3_c);

    auto* verify_c = app.add_subcommand("verify", "Residual suites");
    verify_c->add_option("target", o.target, "relations|haar|cg|lemma1|composition|all")
        ->check(CLI::IsMember(verify_targets()))
        ->capture_default_str();
    verify_c->add_option("--tol", o.tol, "Residual tolerance")->capture_default_str();
    add_common(verify_c);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << '\n';
        return usage;
    }

    try {
        Runner r(o, out);
        if (*fuse_c) return r.fuse_cmd();
        if (*dim_c) return r.poly_cmd(dim_q(r.rep(o.rep, "--rep")));
        if (*index_c) return r.poly_cmd(index_poly(r.rep(o.rep, "--rep")));
        if (*tower_c) return r.tower_cmd();
        if (*type3_c) return r.type3_cmd();
        if (*verify_c) return r.verify_cmd();
    } catch (const NumericalDegeneracy& e) {
        err << "error: " << e.kind() << ": " << e.what() << '\n';
        return internal;
    } catch (const Error& e) {
        err << "error: " << e.kind() << ": " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << '\n';
        return internal;
    }
    return usage;
}

}  // namespace qsf::cli
