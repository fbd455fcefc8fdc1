// Copyright 2026 The djnmr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DJNMR_SPECTRA_H
#define DJNMR_SPECTRA_H

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "djnmr/functions.h"
#include "djnmr/simulator.h"

namespace djnmr {

struct Spectrum {
    std::vector<double> freqs_hz;
    std::vector<Complex> values;
    /// Per-spin phase already applied, degrees.
    std::vector<double> phase_corrections_deg;

    /// Throws Error unless freqs are strictly increasing and sizes match.
    void validate() const;
};

/// Frequency range [lo_hz, hi_hz] holding one spin's multiplet.
struct Window {
    double lo_hz;
    double hi_hz;
};

/// FFT with the first point halved, centered axis (k - n/2) sweep/n, and
/// amplitudes scaled by the dwell time.
Spectrum fft_spectrum(const Fid &fid);

/// nu_j +- (sum_k |J_jk|/2 + margin). Throws Error if two windows overlap.
std::vector<Window> multiplet_windows(const SpinSystem &system, double margin_hz = -1);

/// Multiplies the points of window j by e^{i phi_j}. Throws on overlap.
Spectrum apply_passive_phases(const Spectrum &spec, const std::vector<double> &phases_deg,
                              const std::vector<Window> &windows);

/// Phases that turn each fiducial multiplet into upright absorption, from the
/// |v|^3 weighted sum over the window, which the line peaks dominate. Tails of
/// other multiplets still bias it by about linewidth / distance.
std::vector<double> fiducial_phases(const Spectrum &fiducial_raw, const std::vector<Window> &windows);

enum class PhaseClass {
    Up,
    Inverted,
};

struct LineRecord {
    double freq_hz;
    /// Signed amplitude of the absorption-mode line after fiducial phasing.
    double amplitude;
    PhaseClass phase_class;
};

struct SpinMultiplet {
    size_t spin;
    std::vector<LineRecord> lines;
    /// "inphase", "antiphase(k)", "doubly-antiphase(k,l)", "mixed" or "none".
    std::string multiplet_class;
};

struct MultipletReport {
    std::vector<SpinMultiplet> multiplets;
    /// Terms with more than one transverse factor; they produce no signal.
    std::vector<std::string> unclassifiable;
};

MultipletReport predict_multiplets(const ProductExpansion &exp, const SpinSystem &system);

/// Local extrema of Re(values) with |Re| above threshold times the largest
/// |Re| in the range, positions refined by a three-point parabola.
std::vector<LineRecord> detect_lines(const Spectrum &spec, double lo_hz, double hi_hz, double threshold = 0.05);

/// Balanced iff some point of f has Re < -threshold * max Re(fiducial).
/// Both spectra must be phased against the same fiducial phases.
Kind classify_dj(const Spectrum &f_spec, const Spectrum &fiducial, double threshold = 0.2);

// ---- doublet lineshapes ----

enum class DoubletMode {
    InphaseAbs,
    AntiphaseAbs,
    AntiphaseDisp,
};

/// m(u) with u the offset in linewidth units and the lines at +-s/2.
std::function<double(double)> doublet_profile(double s, DoubletMode mode);

struct InphaseFeatures {
    int n_extrema;
    double peak_height;
    double peak_separation;
    std::optional<double> trough_height;
};
InphaseFeatures inphase_features(double s);

struct DispersionFeatures {
    double m_max;
    double m_min;
    double du_roots;
    double du_max;
    double r_a;
};
/// 0 < s < sqrt(3).
DispersionFeatures dispersion_features(double s);

struct AntiphaseFeatures {
    double peak_separation;
    double peak_height;
};
AntiphaseFeatures antiphase_features(double s);

/// r_a(s) for the dispersion doublet.
double dispersion_ratio(double s);

struct DoubletFit {
    double s;
    double linewidth_rad_s;
    double j_hz;
    double r_a;
    double du_max;
};

/// Reads m_max and m_min from the real part of a dispersion-mode antiphase
/// doublet and inverts the amplitude ratio for s.
DoubletFit fit_j_from_dispersion(const Spectrum &spec, double center_hz, double window_hz,
                                 double symmetry_tolerance = 0.05);

/// Exact Lorentzian doublet sampled on freqs. Linewidth is the FWHM in rad/s.
Spectrum synthesize_doublet(double j_hz, double linewidth_rad_s, double center_hz, DoubletMode mode,
                            const std::vector<double> &freqs_hz);
std::vector<double> uniform_axis(double lo_hz, double hi_hz, size_t n);

}  // namespace djnmr

#endif
