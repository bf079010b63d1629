// lamlab: command-line driver over the lamlab headers.
//
// Exit codes: 0 ok, 1 usage or domain error, 2 resource cap, 3 check failed,
// 4 internal consistency error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lamlab/lamlab.hpp"

namespace {

using namespace lamlab;

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot write " + path);
    f << text;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<long long> parse_list(const std::string& s) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (...) {
            throw DomainError("not an integer list: " + s);
        }
        if (used != tok.size()) throw DomainError("not an integer list: " + s);
        out.push_back(v);
    }
    return out;
}

Leaf parse_leaf(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw DomainError("leaf must be written a/b,c/d");
    return Leaf(Angle::parse(s.substr(0, comma)), Angle::parse(s.substr(comma + 1)));
}

RenderLayer layer_of(const LaminationSpec& spec, int depth, int period_bound, bool conj) {
    auto approx = build(spec, depth);
    RenderLayer L;
    std::set<Polygon> polys(approx.polygons.begin(), approx.polygons.end());
    for (const auto& pg : polygons_of(spec, period_bound)) polys.insert(pg);
    for (const auto& l : approx.leaves) L.leaves.insert(conj ? conjugate_leaf(l) : l);
    for (const auto& pg : polys) {
        std::vector<Angle> v;
        for (const auto& a : pg.vertices) v.push_back(conj ? conjugate(a) : a);
        Polygon q = make_polygon(v);
        for (const auto& s : q.sides()) L.leaves.insert(s);
        L.polygons.push_back(q);
    }
    std::sort(L.polygons.begin(), L.polygons.end());
    return L;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lamlab: quadratic invariant laminations, matings and address arithmetic"};
    app.require_subcommand(1);
    Limits lim = limits();
    app.add_option("--max-period", lim.max_period, "cap on enumerated periods (env LAMLAB_MAX_PERIOD)")->capture_default_str();
    app.add_option("--max-depth", lim.max_depth, "cap on pullback depth")->capture_default_str();

    // minor
    auto* minor = app.add_subcommand("minor", "minor leaf, limb root and tuning of a periodic angle");
    std::string minor_angle;
    minor->add_option("angle", minor_angle, "angle num/den")->required();

    // qml
    auto* qml = app.add_subcommand("qml", "all minor leaves of period <= n (Lavaurs)");
    int qml_n = 0;
    qml->add_option("n", qml_n, "period bound")->required();

    // lam
    auto* lam = app.add_subcommand("lam", "invariant lamination L_p to finite depth");
    std::string lam_p, lam_json, lam_svg;
    int lam_depth = 6, lam_bound = 12;
    bool lam_geo = false;
    lam->add_option("p", lam_p, "angle num/den")->required();
    lam->add_option("--depth", lam_depth, "pullback depth")->capture_default_str();
    lam->add_option("--period-bound", lam_bound, "period bound for itinerary polygons")->capture_default_str();
    lam->add_option("--json", lam_json, "write JSON here instead of stdout");
    lam->add_option("--svg", lam_svg, "write an SVG chord diagram");
    lam->add_flag("--geodesic", lam_geo, "draw leaves as hyperbolic geodesics");

    // mate
    auto* mate = app.add_subcommand("mate", "mating equivalence classes of L_p and L_q^{-1}");
    std::string mate_p, mate_q, mate_seed, mate_svg;
    int mate_bound = 12, mate_periodic = 0, mate_depth = 6;
    bool mate_check = false, mate_geo = false;
    mate->add_option("p", mate_p, "angle num/den")->required();
    mate->add_option("q", mate_q, "angle num/den")->required();
    mate->add_flag("--check-3-5", mate_check, "check the hypotheses of the mating theorem; exit 3 on failure");
    mate->add_option("--period-bound", mate_bound, "largest angle period enumerated")->capture_default_str();
    mate->add_option("--seed", mate_seed, "print the class of an angle a/b or a leaf a/b,c/d");
    mate->add_option("--periodic", mate_periodic, "print periodic classes whose period divides n");
    mate->add_option("--svg", mate_svg, "write an SVG of both laminations");
    mate->add_option("--depth", mate_depth, "pullback depth for --svg")->capture_default_str();
    mate->add_flag("--geodesic", mate_geo, "draw leaves as hyperbolic geodesics");

    // count
    auto* count = app.add_subcommand("count", "periodic point and hyperbolic component counts");
    std::string count_matrix;
    int count_period = 0, count_mandel = 0;
    bool count_exact = false;
    std::string count_points;
    count->add_option("--matrix", count_matrix, "transition matrix JSON file (array of arrays)");
    count->add_option("--period", count_period, "period n");
    count->add_flag("--exact", count_exact, "also report exact-period counts");
    count->add_option("--mandelbrot", count_mandel, "components of period dividing m in the Mandelbrot set");
    count->add_option("--points", count_points, "components for a number of periodic points");

    // address
    auto* address = app.add_subcommand("address", "renormalization address arithmetic");
    address->require_subcommand(1);
    auto* validate = address->add_subcommand("validate", "validate one address");
    auto* enumerate = address->add_subcommand("enumerate", "stream valid addresses as NDJSON");
    std::string scheme = "thm24", j_list, mseq_list, rule = "proof";
    long long addr_m = 1, i1 = 1, m_max = 0, j_min = 1, j_max = 1;
    int n_min = 2, n_max = 2;
    std::size_t length = 3;
    bool tuning_tail = false;
    for (auto* sc : {validate, enumerate}) {
        sc->add_option("--scheme", scheme, "thm24 or s313")->check(CLI::IsMember({"thm24", "s313"}))->capture_default_str();
        sc->add_option("--m", addr_m, "m = m_1")->capture_default_str();
        sc->add_option("--i1", i1, "i_1 (s313)")->capture_default_str();
        sc->add_option("--rule", rule, "s313 remainder rule")->check(CLI::IsMember({"proof", "displayed"}))->capture_default_str();
    }
    validate->add_option("--j", j_list, "comma-separated j_i")->required();
    validate->add_option("--mseq", mseq_list, "comma-separated m_i")->required();
    validate->add_flag("--tuning-tail", tuning_tail, "last step is a tuning (thm24)");
    enumerate->add_option("--n-min", n_min, "least N (thm24)")->capture_default_str();
    enumerate->add_option("--n-max", n_max, "largest N (thm24)")->capture_default_str();
    enumerate->add_option("--m-max", m_max, "bound on every m_i")->capture_default_str();
    enumerate->add_option("--j-min", j_min, "least j_i (thm24)")->capture_default_str();
    enumerate->add_option("--j-max", j_max, "largest j_i")->capture_default_str();
    enumerate->add_option("--length", length, "number of terms (s313)")->capture_default_str();

    // render
    auto* render = app.add_subcommand("render", "SVG chord diagram of L_p, optionally with L_q^{-1}");
    std::string render_p, render_q, render_out;
    int render_depth = 6, render_bound = 12, render_size = 600;
    bool render_geo = false;
    render->add_option("p", render_p, "angle num/den")->required();
    render->add_option("--q", render_q, "second angle, drawn inverted");
    render->add_option("--depth", render_depth, "pullback depth")->capture_default_str();
    render->add_option("--period-bound", render_bound, "period bound for itinerary polygons")->capture_default_str();
    render->add_option("--svg", render_out, "output file (default stdout)");
    render->add_option("--size", render_size, "image size in pixels")->capture_default_str();
    render->add_flag("--geodesic", render_geo, "draw leaves as hyperbolic geodesics");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        set_limits(lim);
        if (*minor) {
            Angle x = Angle::parse(minor_angle);
            if (x.is_zero()) {
                emit({{"minor", nullptr}, {"notice", "main cardioid: degenerate minor"}});
                return 0;
            }
            emit(minor_report(x));
        } else if (*qml) {
            emit(to_json(pairing_of_period(qml_n)));
        } else if (*lam) {
            LaminationSpec spec(Angle::parse(lam_p));
            auto approx = build(spec, lam_depth);
            auto extra = polygons_of(spec, lam_bound);
            std::string text = to_json(approx, extra).dump(2) + "\n";
            if (lam_json.empty()) std::cout << text;
            else write_file(lam_json, text);
            if (!lam_svg.empty()) {
                RenderStyle st;
                st.geodesic = lam_geo;
                write_file(lam_svg, render_svg(layer_of(spec, lam_depth, lam_bound, false), nullptr, st));
            }
        } else if (*mate) {
            MatingSpec spec(Angle::parse(mate_p), Angle::parse(mate_q));
            ordered_json out;
            out["p"] = spec.p().str();
            out["q"] = spec.q().str();
            out["mateable"] = is_mateable(spec.p(), spec.q());
            bool failed = false;
            if (!mate_seed.empty()) {
                Seed seed = mate_seed.find(',') == std::string::npos ? Seed(Angle::parse(mate_seed)) : Seed(parse_leaf(mate_seed));
                out["class"] = to_json(class_of(spec, seed, mate_bound));
            }
            if (mate_periodic > 0) {
                ordered_json a = ordered_json::array();
                for (const auto& c : periodic_classes(spec, mate_periodic, mate_bound)) a.push_back(to_json(c));
                out["periodic_classes"] = a;
            }
            if (mate_check || (mate_seed.empty() && mate_periodic == 0)) {
                auto rep = check_theorem_3_5(spec, mate_bound);
                out["report"] = to_json(rep);
                failed = mate_check && !rep.thm35_ok;
            }
            emit(out);
            if (!mate_svg.empty()) {
                RenderStyle st;
                st.geodesic = mate_geo;
                auto lp = layer_of(spec.lp(), mate_depth, mate_bound, false);
                auto lq = layer_of(spec.lq(), mate_depth, mate_bound, true);
                write_file(mate_svg, render_svg(lp, &lq, st));
            }
            if (failed) return 3;
        } else if (*count) {
            ordered_json out;
            if (count_mandel > 0) {
                out["mandelbrot"] = count_mandel;
                out["components"] = big_to_json(mandelbrot_component_count(count_mandel));
            }
            if (!count_points.empty()) {
                BigInt pts;
                try {
                    pts = BigInt(count_points);
                } catch (...) {
                    throw DomainError("--points must be an integer");
                }
                out["points"] = big_to_json(pts);
                out["components"] = big_to_json(component_count_from_points(pts));
            }
            if (!count_matrix.empty()) {
                if (count_period < 1) throw DomainError("--matrix needs --period n >= 1");
                std::ifstream f(count_matrix);
                if (!f) throw DomainError("cannot read " + count_matrix);
                nlohmann::json mj;
                try {
                    mj = nlohmann::json::parse(f);
                } catch (const nlohmann::json::exception& e) {
                    throw DomainError(std::string("bad matrix JSON: ") + e.what());
                }
                auto M = matrix_from_json(mj);
                out["period"] = count_period;
                out["fixed"] = big_to_json(count_fixed(M, count_period));
                if (count_exact) {
                    BigInt ex = count_exact_period(M, count_period);
                    out["exact"] = big_to_json(ex);
                    out["orbits"] = big_to_json(ex / count_period);
                    out["components"] = big_to_json(component_count_from_points(ex));
                }
            }
            if (out.empty()) throw DomainError("count needs --mandelbrot, --points or --matrix");
            if (count_mandel > 0 && out.size() == 2) {
                std::cout << out["components"].dump() << "\n";
            } else {
                emit(out);
            }
        } else if (*address) {
            RemainderRule rr = rule == "proof" ? RemainderRule::proof : RemainderRule::displayed;
            if (*validate) {
                auto js = parse_list(j_list), ms = parse_list(mseq_list);
                Verdict v;
                if (scheme == "thm24") {
                    Address24 a;
                    a.m = addr_m;
                    a.j = js;
                    a.m_seq = ms;
                    a.N = static_cast<int>(ms.size());
                    a.tuning_tail = tuning_tail;
                    v = validate_thm24(a);
                } else {
                    Address313 a;
                    a.m = addr_m;
                    a.i1 = i1;
                    a.j = js;
                    a.m_seq = ms;
                    a.rule = rr;
                    v = validate_lemma314(a);
                }
                emit(to_json(v));
                if (!v.valid) return 3;
            } else {
                if (scheme == "thm24") {
                    Thm24Bounds b{addr_m, n_min, n_max, m_max, j_min, j_max};
                    enumerate_thm24(b, [](const Address24& a) { std::cout << to_json(a).dump() << "\n"; });
                } else {
                    S313Bounds b{addr_m, i1, length, m_max, j_max, rr};
                    enumerate_s313(b, [](const Address313& a) { std::cout << to_json(a).dump() << "\n"; });
                }
            }
        } else if (*render) {
            LaminationSpec sp(Angle::parse(render_p));
            RenderStyle st;
            st.geodesic = render_geo;
            st.size = render_size;
            auto lp = layer_of(sp, render_depth, render_bound, false);
            std::string svg;
            if (!render_q.empty()) {
                LaminationSpec sq(Angle::parse(render_q));
                auto lq = layer_of(sq, render_depth, render_bound, true);
                svg = render_svg(lp, &lq, st);
            } else {
                svg = render_svg(lp, nullptr, st);
            }
            if (render_out.empty()) std::cout << svg;
            else write_file(render_out, svg);
        }
    } catch (const ResourceLimitError& e) {
        std::cerr << "lamlab: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "lamlab: " << e.what() << "\n";
        return 1;
    } catch (const ConsistencyError& e) {
        std::cerr << "lamlab: internal consistency error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
