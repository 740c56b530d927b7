#include "smmc/presets.hpp"

#include <sstream>
#include <stdexcept>

namespace smmc {

namespace {

constexpr double um = 1e-6;

RunConfig base_config(const Scheme& scheme, double r_m, double ts_s, bool full_scale) {
    RunConfig cfg;
    cfg.scheme = scheme;
    cfg.geometry.n_links = scheme.n_links;
    cfg.geometry.link_distance = 20 * um;
    cfg.geometry.separation = r_m;
    cfg.geometry.receiver_radius = 0.1 * um;
    cfg.geometry.diffusion_coeff = 2.2e-9;
    cfg.symbol_duration = ts_s;
    cfg.symbols_per_rep = full_scale ? 1000000 : 100000;
    cfg.replications = full_scale ? 20 : 5;
    return cfg;
}

std::string num(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

void add_ssk_pair(std::vector<CurveSpec>& out, double r_m, double ts_s, bool full,
                  const std::string& suffix) {
    out.push_back({"bssk_" + suffix, base_config(Scheme::ssk(2), r_m, ts_s, full)});
    out.push_back({"qssk_" + suffix, base_config(Scheme::ssk(4), r_m, ts_s, full)});
}

void add_sm_pair(std::vector<CurveSpec>& out, double r_m, double ts_s, bool full,
                 const std::string& suffix) {
    out.push_back({"sm2x2_" + suffix, base_config(Scheme::sm(2, 2), r_m, ts_s, full)});
    out.push_back({"sm4x4_" + suffix, base_config(Scheme::sm(4, 2), r_m, ts_s, full)});
}

}  // namespace

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names = {"fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};
    return names;
}

std::vector<CurveSpec> figure_preset(const std::string& name, bool full_scale) {
    std::vector<CurveSpec> out;
    if (name == "fig4") {
        for (double ts : {0.1, 0.2, 0.8})
            add_ssk_pair(out, 12.5 * um, ts, full_scale, "ts" + num(ts) + "s");
    } else if (name == "fig5") {
        for (double r : {10.0, 12.5, 15.0})
            add_ssk_pair(out, r * um, 0.5, full_scale, "r" + num(r) + "um");
    } else if (name == "fig6") {
        for (double ts : {0.15, 0.3, 1.0})
            add_sm_pair(out, 10 * um, ts, full_scale, "ts" + num(ts) + "s");
    } else if (name == "fig7") {
        for (double r : {8.0, 10.0, 12.0})
            add_sm_pair(out, r * um, 1.0, full_scale, "r" + num(r) + "um");
    } else if (name == "fig8") {
        // four schemes at the same 2 bits/symbol
        for (double r : {10.0, 15.0}) {
            const std::string suffix = "r" + num(r) + "um";
            out.push_back({"qssk_" + suffix, base_config(Scheme::ssk(4), r * um, 0.2, full_scale)});
            out.push_back({"sm2x2_" + suffix, base_config(Scheme::sm(2, 2), r * um, 0.2, full_scale)});
            out.push_back({"mimo_ook2x2_" + suffix, base_config(Scheme::mimo_ook(2), r * um, 0.2, full_scale)});
            out.push_back({"siso_qcsk_" + suffix, base_config(Scheme::siso_csk(4), r * um, 0.2, full_scale)});
        }
    } else if (name == "fig9") {
        const std::pair<int, double> combos[] = {{4, 10.0}, {2, 12.5}, {4, 12.5}, {2, 15.0}};
        for (const auto& [n, r] : combos) {
            for (DetectorChoice det : {DetectorChoice::SuccessiveSc, DetectorChoice::SuccessiveEgc}) {
                RunConfig cfg = base_config(Scheme::sm(n, 2), r * um, 1.0, full_scale);
                cfg.detector = det;
                out.push_back({"sm" + std::to_string(n) + "x" + std::to_string(n) + "_r" + num(r) +
                                   "um_" + detector_name(det),
                               cfg});
            }
        }
    } else {
        throw std::invalid_argument("unknown figure preset '" + name + "'");
    }
    return out;
}

}  // namespace smmc
