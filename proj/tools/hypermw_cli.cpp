#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hypermw/arrangement_io.hpp"
#include "hypermw/expression.hpp"
#include "hypermw/os_model.hpp"
#include "hypermw/presentation.hpp"
#include "hypermw/verify.hpp"

using namespace hypermw;

namespace {

std::string poincare_text(const std::vector<long>& c) {
    std::string out;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
        std::string coef = (c[k] == 1 && k > 0) ? "" : std::to_string(c[k]);
        out += (out.empty() ? "" : " + ") + coef + mono;
    }
    return out.empty() ? "0" : out;
}

std::string ranks_text(const std::vector<long>& r) {
    std::string out;
    for (long x : r) out += " " + std::to_string(x);
    return out;
}

// Moves hyperplane y to the end; returns the new arrangement and the old->new index map.
std::pair<Arrangement, std::vector<int>> move_last(const Arrangement& a, int y) {
    std::vector<Row> rows;
    std::vector<int> map(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (static_cast<int>(i) != y) {
            map[i] = static_cast<int>(rows.size());
            rows.push_back(a[i].coeffs());
        }
    map[static_cast<std::size_t>(y)] = static_cast<int>(rows.size());
    rows.push_back(a[static_cast<std::size_t>(y)].coeffs());
    return {Arrangement::from_rows(a.field(), a.dim(), rows), map};
}

PresElement reindex(const PresElement& x, const std::vector<int>& map) {
    PresElement out(x.field());
    for (const auto& [w, c] : x.terms()) {
        Word nw;
        for (const auto& u : w) {
            Unit v{u.lambda, {}};
            for (auto [i, e] : u.exponents) v.exponents[map[static_cast<std::size_t>(i)]] = e;
            nw.push_back(v);
        }
        out += PresElement::word(nw, c);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Milnor-Witt motivic cohomology of hyperplane arrangement complements"};
    app.require_subcommand(1);
    std::string path;
    auto add_arr = [&](CLI::App* c, bool required = true) {
        auto* o = c->add_option("--arrangement", path, "arrangement JSON file");
        if (required) o->required();
        return c;
    };

    auto* info = add_arr(app.add_subcommand("info", "summary of the arrangement"));
    auto* poincare = add_arr(app.add_subcommand("poincare", "Poincare polynomial"));
    auto* basis_cmd = add_arr(app.add_subcommand("basis", "basis monomials"));
    auto* rank_cmd = add_arr(app.add_subcommand("rank", "ranks per degree"));

    std::string expr, expr2, unit_text, mono_text, suite;
    int index = 0;
    std::size_t seeds = 20;
    std::uint64_t seed = 1;
    bool as_json = false;

    auto* nf = add_arr(app.add_subcommand("nf", "normal form of an element"));
    nf->add_option("EXPR", expr)->required();
    auto* mul = add_arr(app.add_subcommand("mul", "normal form of a product"));
    mul->add_option("EXPR", expr)->required();
    mul->add_option("EXPR2", expr2)->required();
    auto* boundary = add_arr(app.add_subcommand("boundary", "residue along a hyperplane (1-based INDEX)"));
    boundary->add_option("EXPR", expr)->required();
    boundary->add_option("INDEX", index)->required();
    auto* psi = add_arr(app.add_subcommand("psi", "image in the exterior model"));
    psi->add_option("EXPR", expr)->required();
    auto* phi = add_arr(app.add_subcommand("phi", "word of a wedge monomial"));
    phi->add_option("MONO", mono_text)->required();
    auto* tdiv = add_arr(app.add_subcommand("tdiv", "twisted divisor of a unit"));
    tdiv->add_option("UNIT", unit_text)->required();
    auto* verify = add_arr(app.add_subcommand("verify", "property suite; with --arrangement, replays one case"), false);
    verify->add_option("SUITE", suite)->required();
    verify->add_option("--seeds", seeds, "number of random cases")->capture_default_str();
    verify->add_option("--seed", seed, "seed of the replayed case, or the first seed")->capture_default_str();
    verify->add_flag("--json", as_json, "emit the report as JSON");
    auto* exp = add_arr(app.add_subcommand("export", "basis, ranks, circuit relations and products as JSON"));

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            if (!path.empty()) {
                Arrangement a = load_arrangement(path);
                CaseOutcome out = check_case(suite, a, seed);
                for (const auto& f : out.failures) {
                    std::cout << "FAIL: " << f.what << "\n";
                    if (!f.expression.empty()) std::cout << "  expression: " << f.expression << "\n";
                }
                std::cout << suite << ": " << out.failures.size() << " failures, " << out.inconclusive
                          << " inconclusive\n";
                return out.ok() ? 0 : 1;
            }
            VerifyReport rep = run_suite(suite, seeds, seed);
            if (as_json) std::cout << rep.to_json().dump(2) << "\n";
            else std::cout << rep.to_text();
            return rep.ok() ? 0 : 1;
        }

        Arrangement a = load_arrangement(path);
        if (info->parsed()) {
            std::cout << a.to_string() << "\n";
            std::cout << "circuits:\n";
            for (const auto& c : a.circuits()) {
                std::cout << " ";
                for (int i : c.members) std::cout << " " << i + 1;
                std::cout << (c.central() ? "  (central)" : "  (affine)") << "\n";
            }
            std::cout << "nbc sets: " << a.nbc_sets().size() << "\n";
            std::cout << "degree ranks:" << ranks_text(rank(a)) << "\n";
        } else if (poincare->parsed()) {
            std::cout << poincare_text(a.poincare_polynomial()) << "\n";
        } else if (basis_cmd->parsed()) {
            for (const auto& s : basis(a)) std::cout << format_basis_word(s, a) << "\n";
        } else if (rank_cmd->parsed()) {
            std::cout << "degree ranks:" << ranks_text(rank(a)) << "\n";
        } else if (nf->parsed()) {
            Presentation p(a);
            std::cout << format_nf(p.normal_form(parse_element(expr, a)), a) << "\n";
        } else if (mul->parsed()) {
            Presentation p(a);
            std::cout << format_nf(p.multiply(parse_element(expr, a), parse_element(expr2, a)), a) << "\n";
        } else if (boundary->parsed()) {
            if (index < 1 || static_cast<std::size_t>(index) > a.size())
                throw Error("hyperplane index " + std::to_string(index) + " out of range");
            PresElement x = parse_element(expr, a);
            auto [moved, map] = move_last(a, index - 1);
            Presentation p(moved);
            PresElement b = restriction_boundary(p, reindex(x, map));
            Arrangement restricted = moved.restriction(static_cast<int>(moved.size()) - 1).restricted;
            std::cout << format_nf(Presentation(restricted).normal_form(b), restricted) << "\n";
        } else if (psi->parsed()) {
            std::cout << OSModel(a).psi(parse_element(expr, a)).to_string() << "\n";
        } else if (phi->parsed()) {
            std::cout << format_element(OSModel(a).phi(parse_monomial(mono_text, a)), a) << "\n";
        } else if (tdiv->parsed()) {
            Unit u = parse_unit(unit_text, a);
            a.validate_unit(u);
            std::cout << tilde_div(u).to_string() << "\n";
        } else if (exp->parsed()) {
            std::cout << export_json(a).dump(2) << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
