#pragma once

#include <string>
#include <vector>

#include "smmc/engine.hpp"

namespace smmc {

/// One curve of a canned experiment: a label for file naming plus the full
/// run configuration it expands to.
struct CurveSpec {
    std::string label;
    RunConfig config;
};

/// Canned SNR-sweep experiments, fig4..fig9:
///   fig4: BSSK/QSSK, r = 12.5 um, Ts in {0.1, 0.2, 0.8} s
///   fig5: BSSK/QSSK, Ts = 0.5 s, r in {10, 12.5, 15} um
///   fig6: 2x2 / 4x4 SM-BCSK (EGC), r = 10 um, Ts in {0.15, 0.3, 1} s
///   fig7: 2x2 / 4x4 SM-BCSK (EGC), Ts = 1 s, r in {8, 10, 12} um
///   fig8: rate-matched schemes (QSSK, 2x2 SM-BCSK, 2x2 MIMO-OOK, SISO-QCSK),
///         Ts = 0.2 s, r in {10, 15} um
///   fig9: SM-BCSK SC vs EGC, Ts = 1 s, (N, r) in {(4,10), (2,12.5),
///         (4,12.5), (2,15)} um
/// Desk-scale sampling by default (1e5 symbols x 5 replications);
/// full_scale switches to 1e6 x 20.
std::vector<CurveSpec> figure_preset(const std::string& name, bool full_scale = false);

const std::vector<std::string>& figure_names();

}  // namespace smmc
