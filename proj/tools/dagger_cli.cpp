#include "dagger/acceptance.hpp"
#include "dagger/algebra.hpp"
#include "dagger/cech.hpp"
#include "dagger/derham.hpp"
#include "dagger/duality.hpp"
#include "dagger/error.hpp"
#include "dagger/json_io.hpp"
#include "dagger/weierstrass.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>

using namespace dagger;
using io::json;

namespace {

// The file currently being read, reported with any error.
std::string current_input;

json load(const std::string& path) {
    current_input = path;
    return io::read_file(path);
}

OSeries load_series(const std::string& path) { return io::series_from_json(load(path)); }
DaggerPresentation load_presentation(const std::string& path) { return io::presentation_from_json(load(path)); }

Rational arg_rational(const std::string& s, const char* flag) {
    std::string previous = current_input;
    current_input = std::string("--") + flag + " " + s;
    Rational r = parse_rational(s);
    current_input = previous;
    return r;
}

// --var is 1-based on the command line.
std::size_t arg_var(long var, const OSeries& f) {
    if (var < 1 || static_cast<std::size_t>(var) > f.nvars())
        fail(ErrorKind::invalid_argument, "--var must lie between 1 and " + std::to_string(f.nvars()));
    return static_cast<std::size_t>(var - 1);
}

json ext(const ExtRational& x) { return x.to_string(); }

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for overconvergent p-adic series"};
    app.require_subcommand(1);

    std::string cutoff_text = "40";
    std::string t_text = "0";
    long var = 1;
    std::function<int()> action;

    auto cutoff_flag = [&](CLI::App* sub) {
        sub->add_option("--cutoff", cutoff_text, "Valuation to which results are certified")
            ->envname("DAGGER_CUTOFF")
            ->capture_default_str();
    };
    auto slope_flag = [&](CLI::App* sub, const char* help) {
        sub->add_option("--t", t_text, help)->capture_default_str();
    };
    auto cutoff = [&] { return arg_rational(cutoff_text, "cutoff"); };
    auto slope = [&] { return arg_rational(t_text, "t"); };

    // gaussnorm
    std::string f_path, g_path, p_path, a_path, b_path;
    auto* gauss = app.add_subcommand("gaussnorm", "Gauss valuation w_t of a series");
    slope_flag(gauss, "Slope t");
    gauss->add_option("f", f_path, "Series JSON")->required()->check(CLI::ExistingFile);
    gauss->callback([&] {
        action = [&] {
            Slope t(slope());
            auto f = load_series(f_path);
            emit(json{{"w", ext(gauss_valuation(f, t))}, {"t", to_string(t.value())}});
            return 0;
        };
    });

    // wdiv
    std::string schedule = "whole";
    auto* wdiv = app.add_subcommand("wdiv", "Weierstrass division f = g q + r");
    wdiv->add_option("f", f_path, "Dividend series JSON")->required()->check(CLI::ExistingFile);
    wdiv->add_option("g", g_path, "Distinguished divisor series JSON")->required()->check(CLI::ExistingFile);
    wdiv->add_option("--var", var, "Distinguished variable (1-based)")->capture_default_str();
    slope_flag(wdiv, "Slope t");
    cutoff_flag(wdiv);
    wdiv->add_option("--schedule", schedule, "whole or termwise")
        ->check(CLI::IsMember({"whole", "termwise"}))
        ->capture_default_str();
    wdiv->callback([&] {
        action = [&] {
            Slope t(slope());
            Rational c = cutoff();
            auto f = load_series(f_path);
            auto g = load_series(g_path);
            auto sched = schedule == "termwise" ? DivisionSchedule::termwise : DivisionSchedule::whole;
            auto r = weierstrass_divide(f, g, arg_var(var, g), t, c, sched);
            emit(json{{"quotient", io::to_json(r.quotient)},
                      {"remainder", io::to_json(r.remainder)},
                      {"residual_valuation", ext(r.residual_valuation)},
                      {"passes", r.passes},
                      {"distinguished", io::to_json(r.report)}});
            return 0;
        };
    });

    // wprep
    auto* wprep = app.add_subcommand("wprep", "Weierstrass preparation g = e omega");
    wprep->add_option("g", g_path, "Distinguished series JSON")->required()->check(CLI::ExistingFile);
    wprep->add_option("--var", var, "Distinguished variable (1-based)")->capture_default_str();
    slope_flag(wprep, "Slope t");
    cutoff_flag(wprep);
    wprep->callback([&] {
        action = [&] {
            Slope t(slope());
            Rational c = cutoff();
            auto g = load_series(g_path);
            auto r = weierstrass_prepare(g, arg_var(var, g), t, c);
            emit(json{{"omega", io::to_json(r.weierstrass_poly)},
                      {"unit", io::to_json(r.unit)},
                      {"residual_valuation", ext(r.residual_valuation)},
                      {"distinguished", io::to_json(r.report)}});
            return 0;
        };
    });

    // wdist
    auto* wdist = app.add_subcommand("wdist", "Test whether a series is distinguished");
    wdist->add_option("g", g_path, "Series JSON")->required()->check(CLI::ExistingFile);
    wdist->add_option("--var", var, "Variable (1-based)")->capture_default_str();
    slope_flag(wdist, "Slope t");
    wdist->callback([&] {
        action = [&] {
            Slope t(slope());
            auto g = load_series(g_path);
            auto check = is_distinguished(g, arg_var(var, g), t);
            if (auto* rep = std::get_if<DistinguishedReport>(&check)) {
                emit(json{{"distinguished", true}, {"report", io::to_json(*rep)}});
            } else {
                const auto& no = std::get<NotDistinguished>(check);
                emit(json{{"distinguished", false},
                          {"var", no.variable + 1},
                          {"witness", no.witness},
                          {"reason", no.reason}});
            }
            return 0;
        };
    });

    // wsigma
    auto* wsigma = app.add_subcommand("wsigma", "Distinguishing automorphism");
    wsigma->add_option("f", f_path, "Series JSON")->required()->check(CLI::ExistingFile);
    slope_flag(wsigma, "Slope t");
    wsigma->callback([&] {
        action = [&] {
            Slope t(slope());
            auto f = load_series(f_path);
            auto r = distinguishing_automorphism(f, t);
            emit(json{{"exponents", r.exponents},
                      {"image", io::to_json(r.image)},
                      {"distinguished", io::to_json(r.report)}});
            return 0;
        };
    });

    // reduce
    auto* red = app.add_subcommand("reduce", "Normal form of an element of a presented algebra");
    red->add_option("--presentation", p_path, "Presentation JSON")->required()->check(CLI::ExistingFile);
    red->add_option("f", f_path, "Series JSON")->required()->check(CLI::ExistingFile);
    slope_flag(red, "Slope at which to report the quotient norm");
    cutoff_flag(red);
    red->callback([&] {
        action = [&] {
            Slope t(slope());
            Rational c = cutoff();
            auto P = load_presentation(p_path);
            auto x = reduce(load_series(f_path), P, c);
            auto n = quotient_norm(x, t);
            emit(json{{"presentation", io::to_json(P)},
                      {"normal_form", io::to_json(x.normal_form)},
                      {"residual", ext(x.residual)},
                      {"quotient_norm", json{{"value", ext(n.value)}, {"exact", n.exact}}}});
            return 0;
        };
    });

    // cech
    long prime = 5;
    std::string split_text = "1", mode = "dagger";
    std::vector<std::string> sample_paths;
    auto* cech = app.add_subcommand("cech", "Two-chart Cech cohomology of the disc");
    cech->add_option("--p", prime, "Prime")->capture_default_str();
    cech->add_option("--split", split_text, "Valuation of the splitting circle")->capture_default_str();
    cech->add_option("--mode", mode, "dagger or completed")
        ->check(CLI::IsMember({"dagger", "completed"}))
        ->capture_default_str();
    cutoff_flag(cech);
    cech->add_option("cocycles", sample_paths, "Laurent series JSON on the circle")->check(CLI::ExistingFile);
    cech->callback([&] {
        action = [&] {
            Rational c = cutoff();
            DiscCover cover(Prime(prime), arg_rational(split_text, "split"),
                            mode == "completed" ? CoverMode::completed : CoverMode::dagger);
            std::vector<CoverSection> samples;
            for (const auto& path : sample_paths) {
                auto h = load_series(path);
                samples.push_back(circle_section(cover, h, h.slope()));
            }
            auto r = cech_cohomology(cover, samples, c);
            json out = json::array();
            for (const auto& s : r.samples)
                out.push_back(json{{"cocycle", io::to_json(s.cocycle)},
                                   {"h1", io::to_json(s.preimage.on_disc)},
                                   {"h2", io::to_json(s.preimage.on_annulus)},
                                   {"recombines", s.recombines}});
            emit(json{{"p", prime},
                      {"split", to_string(cover.split)},
                      {"mode", mode},
                      {"H0", r.h0},
                      {"H1_vanishes", r.h1_vanishes},
                      {"samples", out}});
            return 0;
        };
    });

    // hdr
    auto* hdr = app.add_subcommand("hdr", "de Rham cohomology of a presented algebra");
    hdr->add_option("--presentation", p_path, "Presentation JSON")->required()->check(CLI::ExistingFile);
    cutoff_flag(hdr);
    hdr->callback([&] {
        action = [&] {
            Rational c = cutoff();
            emit(io::to_json(cohomology(load_presentation(p_path), c)));
            return 0;
        };
    });

    // kunneth
    auto* kun = app.add_subcommand("kunneth", "Compare H^*(A x B) with H^*(A) (x) H^*(B)");
    kun->add_option("--a", a_path, "Presentation JSON")->required()->check(CLI::ExistingFile);
    kun->add_option("--b", b_path, "Presentation JSON")->required()->check(CLI::ExistingFile);
    cutoff_flag(kun);
    kun->callback([&] {
        action = [&] {
            Rational c = cutoff();
            auto A = load_presentation(a_path);
            auto B = load_presentation(b_path);
            auto r = kunneth(A, B, c);
            emit(json{{"factor_a", r.factor_a},
                      {"factor_b", r.factor_b},
                      {"predicted", r.predicted},
                      {"computed", r.computed},
                      {"match", r.match}});
            return r.match ? 0 : 1;
        };
    });

    // contrast
    long depth = 4;
    auto* con = app.add_subcommand("contrast", "Integrating a completed form versus a dagger form");
    con->add_option("--p", prime, "Prime")->capture_default_str();
    con->add_option("--depth", depth, "Number of terms p^k T^(p^k - 1)")->capture_default_str();
    con->callback([&] {
        action = [&] {
            auto D = DaggerPresentation::free(Context{Prime(prime), {"T"}});
            emit(io::to_json(completed_contrast(D, depth)));
            return 0;
        };
    });

    // residue
    auto* res = app.add_subcommand("residue", "Residue pairing <b, a>");
    res->add_option("b", b_path, "Series JSON")->required()->check(CLI::ExistingFile);
    res->add_option("a", a_path, "Laurent tail JSON")->required()->check(CLI::ExistingFile);
    res->callback([&] {
        action = [&] {
            auto b = load_series(b_path);
            auto a = io::tail_from_json(load(a_path));
            auto r = residue_pair(b, a);
            emit(json{{"value", to_string(r.value)}, {"omitted_bound", ext(r.omitted_bound)}});
            return 0;
        };
    });

    // gram
    long K = 1, m = 1;
    auto* gram = app.add_subcommand("gram", "Gram matrix of the residue pairing on monomials");
    gram->add_option("--K", K, "Exponents 0..K-1 per variable")->check(CLI::PositiveNumber)->capture_default_str();
    gram->add_option("--m", m, "Number of variables")->check(CLI::PositiveNumber)->capture_default_str();
    gram->add_option("--p", prime, "Prime")->capture_default_str();
    gram->callback([&] {
        action = [&] {
            emit(io::to_json(pairing_gram(K, m, Prime(prime))));
            return 0;
        };
    });

    // poincare
    auto* poin = app.add_subcommand("poincare", "Poincare duality pairing on cohomology");
    poin->add_option("--presentation", p_path, "Presentation JSON")->required()->check(CLI::ExistingFile);
    cutoff_flag(poin);
    poin->callback([&] {
        action = [&] {
            Rational c = cutoff();
            auto r = poincare_check(load_presentation(p_path), c);
            emit(json{{"h1_pairing", to_string(r.h1_pairing)},
                      {"h0_pairing", to_string(r.h0_pairing)},
                      {"exact_pairing", to_string(r.exact_pairing)},
                      {"nondegenerate", r.nondegenerate},
                      {"normalization", r.normalization}});
            return r.nondegenerate ? 0 : 1;
        };
    });

    // selftest
    unsigned long seed = 20240601;
    auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
    self->add_option("--seed", seed, "Random seed")->capture_default_str();
    self->callback([&] {
        action = [&] {
            bool all = true;
            acceptance::run_all(seed, [&](const acceptance::CriterionResult& r) {
                std::cout << acceptance::format_line(r) << std::endl;
                all = all && r.passed;
            });
            return all ? 0 : 1;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit(json{{"error", json{{"kind", "invalid-argument"}, {"message", e.what()}}}});
        return 2;
    }

    try {
        return action();
    } catch (const DaggerError& e) {
        emit(io::error_json(e, current_input));
    } catch (const std::exception& e) {
        emit(json{{"error", json{{"kind", "internal"}, {"message", e.what()}, {"input", current_input}}}});
    }
    return 1;
}
