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

#include "djnmr/spectra.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>

namespace djnmr {

namespace {

bool overlap(const Window &a, const Window &b) {
    return a.lo_hz <= b.hi_hz && b.lo_hz <= a.hi_hz;
}

void check_disjoint(const std::vector<Window> &windows) {
    for (size_t a = 0; a < windows.size(); a++) {
        if (!(windows[a].lo_hz < windows[a].hi_hz)) {
            throw Error("window " + std::to_string(a) + " is empty");
        }
        for (size_t b = 0; b < a; b++) {
            if (overlap(windows[a], windows[b])) {
                throw Error("windows " + std::to_string(b) + " and " + std::to_string(a) + " overlap");
            }
        }
    }
}

Complex lorentz(double v) {
    return 1.0 / Complex(1.0, -2.0 * v);
}

struct Extremum {
    double pos;
    double value;
};

// Vertex of the parabola through (k-1, k, k+1), in index units.
Extremum refine(const std::vector<double> &y, size_t k) {
    double a = y[k - 1], b = y[k], c = y[k + 1];
    double den = a - 2 * b + c;
    if (den == 0) {
        return {(double)k, b};
    }
    double p = 0.5 * (a - c) / den;
    return {(double)k + p, b - 0.25 * (a - c) * p};
}

}  // namespace

void Spectrum::validate() const {
    if (freqs_hz.size() != values.size()) {
        throw Error("spectrum frequency and value arrays differ in length");
    }
    if (freqs_hz.empty()) {
        throw Error("spectrum is empty");
    }
    for (size_t k = 1; k < freqs_hz.size(); k++) {
        if (!(freqs_hz[k] > freqs_hz[k - 1])) {
            throw Error("spectrum frequencies must be strictly increasing");
        }
    }
}

Spectrum fft_spectrum(const Fid &fid) {
    size_t n = fid.samples.size();
    if (n == 0 || !(fid.dwell_s > 0)) {
        throw Error("FID needs samples and a positive dwell time");
    }
    std::vector<fftw_complex> in(n), out(n);
    for (size_t k = 0; k < n; k++) {
        Complex v = fid.samples[k] * (k == 0 ? 0.5 : 1.0);
        in[k][0] = v.real();
        in[k][1] = v.imag();
    }
    fftw_plan plan = fftw_plan_dft_1d((int)n, in.data(), out.data(), FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    Spectrum s;
    double sweep = 1.0 / fid.dwell_s;
    s.freqs_hz.resize(n);
    s.values.resize(n);
    size_t half = n / 2;
    for (size_t m = 0; m < n; m++) {
        size_t src = (m + n - half) % n;
        s.freqs_hz[m] = ((double)m - (double)half) * sweep / (double)n;
        s.values[m] = Complex(out[src][0], out[src][1]) * fid.dwell_s;
    }
    return s;
}

std::vector<Window> multiplet_windows(const SpinSystem &system, double margin_hz) {
    system.validate();
    size_t n = system.n_spins();
    std::vector<Window> w;
    for (size_t j = 0; j < n; j++) {
        double half = 0;
        for (size_t k = 0; k < n; k++) {
            half += std::abs(system.j(j, k)) / 2;
        }
        double fwhm_hz = linewidth(system, j) / (2 * kPi);
        double margin = margin_hz >= 0 ? margin_hz : 5 * fwhm_hz + 2.0;
        w.push_back({system.offsets_hz[j] - half - margin, system.offsets_hz[j] + half + margin});
    }
    check_disjoint(w);
    return w;
}

Spectrum apply_passive_phases(const Spectrum &spec, const std::vector<double> &phases_deg,
                              const std::vector<Window> &windows) {
    spec.validate();
    if (phases_deg.size() != windows.size()) {
        throw Error("one phase per window required");
    }
    check_disjoint(windows);
    Spectrum out = spec;
    if (out.phase_corrections_deg.size() != windows.size()) {
        out.phase_corrections_deg.assign(windows.size(), 0.0);
    }
    for (size_t j = 0; j < windows.size(); j++) {
        Complex r = std::polar(1.0, deg_to_rad(phases_deg[j]));
        for (size_t k = 0; k < out.freqs_hz.size(); k++) {
            if (out.freqs_hz[k] >= windows[j].lo_hz && out.freqs_hz[k] <= windows[j].hi_hz) {
                out.values[k] *= r;
            }
        }
        out.phase_corrections_deg[j] = normalize_deg(out.phase_corrections_deg[j] + phases_deg[j]);
    }
    return out;
}

std::vector<double> fiducial_phases(const Spectrum &fiducial_raw, const std::vector<Window> &windows) {
    fiducial_raw.validate();
    std::vector<double> out;
    for (const auto &w : windows) {
        Complex sum = 0;
        for (size_t k = 0; k < fiducial_raw.freqs_hz.size(); k++) {
            if (fiducial_raw.freqs_hz[k] >= w.lo_hz && fiducial_raw.freqs_hz[k] <= w.hi_hz) {
                sum += fiducial_raw.values[k] * std::pow(std::abs(fiducial_raw.values[k]), 3);
            }
        }
        if (std::abs(sum) == 0) {
            throw Error("fiducial spectrum has no signal in a multiplet window");
        }
        out.push_back(normalize_deg(-rad_to_deg(std::arg(sum))));
    }
    return out;
}

MultipletReport predict_multiplets(const ProductExpansion &exp, const SpinSystem &system) {
    system.validate();
    size_t n = system.n_spins();
    if (exp.n_spins != n) {
        throw Error("expansion and system spin counts differ");
    }
    struct Acc {
        std::map<std::vector<int>, Complex> by_config;
        std::vector<std::vector<size_t>> z_sets;
    };
    std::vector<Acc> acc(n);
    MultipletReport report;
    for (const auto &[key, c] : exp.significant(1e-10)) {
        std::vector<size_t> transverse, zs;
        for (size_t p = 0; p < n; p++) {
            size_t spin = n - 1 - p;
            if (key[p] == 'x' || key[p] == 'y') {
                transverse.push_back(spin);
            } else if (key[p] == 'z') {
                zs.push_back(spin);
            }
        }
        if (transverse.empty()) {
            continue;
        }
        if (transverse.size() > 1) {
            report.unclassifiable.push_back(key);
            continue;
        }
        size_t j = transverse[0];
        Complex cj = key[n - 1 - j] == 'x' ? Complex(c, 0) : Complex(0, c);
        std::sort(zs.begin(), zs.end(), std::greater<>());
        acc[j].z_sets.push_back(zs);
        for (size_t cfg = 0; cfg < (size_t{1} << n); cfg++) {
            if (cfg & (size_t{1} << j)) {
                continue;
            }
            std::vector<int> s(n, 0);
            double sign = 1;
            for (size_t k = 0; k < n; k++) {
                if (k == j) {
                    continue;
                }
                s[k] = (cfg >> k) & 1 ? -1 : 1;
            }
            for (size_t k : zs) {
                sign *= s[k];
            }
            acc[j].by_config[s] += -cj * sign;
        }
    }
    for (size_t j = 0; j < n; j++) {
        SpinMultiplet m;
        m.spin = j;
        double fwhm_hz = linewidth(system, j) / (2 * kPi);
        struct Raw {
            double f;
            double a;
        };
        std::vector<Raw> raw;
        for (const auto &[s, a] : acc[j].by_config) {
            double f = system.offsets_hz[j];
            for (size_t k = 0; k < n; k++) {
                f += s[k] * system.j(j, k) / 2;
            }
            raw.push_back({f, a.real()});
        }
        std::sort(raw.begin(), raw.end(), [](const Raw &x, const Raw &y) { return x.f < y.f; });
        std::vector<Raw> merged;
        for (const auto &r : raw) {
            if (!merged.empty() && r.f - merged.back().f < fwhm_hz) {
                merged.back().a += r.a;
            } else {
                merged.push_back(r);
            }
        }
        for (const auto &r : merged) {
            if (std::abs(r.a) > 1e-9) {
                m.lines.push_back({r.f, r.a, r.a > 0 ? PhaseClass::Up : PhaseClass::Inverted});
            }
        }
        const auto &zsets = acc[j].z_sets;
        if (zsets.empty()) {
            m.multiplet_class = "none";
        } else if (zsets.size() > 1) {
            m.multiplet_class = "mixed";
        } else if (zsets[0].empty()) {
            m.multiplet_class = "inphase";
        } else if (zsets[0].size() == 1) {
            m.multiplet_class = "antiphase(" + std::to_string(zsets[0][0]) + ")";
        } else {
            std::string c = "doubly-antiphase(";
            for (size_t q = 0; q < zsets[0].size(); q++) {
                c += (q ? "," : "") + std::to_string(zsets[0][q]);
            }
            m.multiplet_class = c + ")";
        }
        report.multiplets.push_back(m);
    }
    return report;
}

std::vector<LineRecord> detect_lines(const Spectrum &spec, double lo_hz, double hi_hz, double threshold) {
    spec.validate();
    std::vector<size_t> idx;
    for (size_t k = 0; k < spec.freqs_hz.size(); k++) {
        if (spec.freqs_hz[k] >= lo_hz && spec.freqs_hz[k] <= hi_hz) {
            idx.push_back(k);
        }
    }
    std::vector<LineRecord> out;
    if (idx.size() < 3) {
        return out;
    }
    std::vector<double> re(spec.values.size());
    double peak = 0;
    for (size_t k : idx) {
        re[k] = spec.values[k].real();
        peak = std::max(peak, std::abs(re[k]));
    }
    if (peak == 0) {
        return out;
    }
    double df = spec.freqs_hz[1] - spec.freqs_hz[0];
    for (size_t q = 1; q + 1 < idx.size(); q++) {
        size_t k = idx[q];
        double y = re[k];
        if (std::abs(y) < threshold * peak) {
            continue;
        }
        bool is_max = y > re[k - 1] && y >= re[k + 1];
        bool is_min = y < re[k - 1] && y <= re[k + 1];
        if ((y > 0 && is_max) || (y < 0 && is_min)) {
            Extremum e = refine(re, k);
            double f = spec.freqs_hz[k] + (e.pos - (double)k) * df;
            out.push_back({f, e.value, e.value > 0 ? PhaseClass::Up : PhaseClass::Inverted});
        }
    }
    return out;
}

Kind classify_dj(const Spectrum &f_spec, const Spectrum &fiducial, double threshold) {
    f_spec.validate();
    fiducial.validate();
    if (f_spec.freqs_hz.size() != fiducial.freqs_hz.size()) {
        throw Error("spectra have different lengths");
    }
    for (size_t k = 0; k < f_spec.freqs_hz.size(); k++) {
        if (std::abs(f_spec.freqs_hz[k] - fiducial.freqs_hz[k]) > 1e-9 * (1 + std::abs(fiducial.freqs_hz[k]))) {
            throw Error("spectra have different frequency axes");
        }
    }
    double top = 0;
    for (const auto &v : fiducial.values) {
        top = std::max(top, v.real());
    }
    if (!(top > 0)) {
        throw Error("fiducial spectrum has no upright line");
    }
    for (const auto &line : detect_lines(f_spec, f_spec.freqs_hz.front(), f_spec.freqs_hz.back(), 0.01)) {
        if (line.amplitude < -threshold * top) {
            return Kind::Balanced;
        }
    }
    return Kind::Constant;
}

std::function<double(double)> doublet_profile(double s, DoubletMode mode) {
    if (!(s >= 0)) {
        throw Error("doublet separation must be non-negative");
    }
    switch (mode) {
        case DoubletMode::InphaseAbs:
            return [s](double u) { return 1 / (1 + (2 * u - s) * (2 * u - s)) + 1 / (1 + (2 * u + s) * (2 * u + s)); };
        case DoubletMode::AntiphaseAbs:
            return [s](double u) { return 1 / (1 + (2 * u - s) * (2 * u - s)) - 1 / (1 + (2 * u + s) * (2 * u + s)); };
        default:
            return [s](double u) {
                return (2 * u - s) / (1 + (2 * u - s) * (2 * u - s)) - (2 * u + s) / (1 + (2 * u + s) * (2 * u + s));
            };
    }
}

InphaseFeatures inphase_features(double s) {
    if (!(s >= 0)) {
        throw Error("doublet separation must be non-negative");
    }
    double s2 = s * s;
    if (s * s * 3 <= 1) {
        return {1, 2 / (1 + s2), 0.0, std::nullopt};
    }
    double w = std::sqrt(1 + s2);
    return {3, 1 / (2 * s2 * (std::sqrt(1 + 1 / s2) - 1)), std::sqrt(2 * s * w - (1 + s2)), 2 / (1 + s2)};
}

double dispersion_ratio(double s) {
    double w = std::sqrt(1 + s * s);
    return (1 + s * s) / (4 * (1 + w));
}

DispersionFeatures dispersion_features(double s) {
    if (!(s > 0) || !(s * s < 3)) {
        throw Error("dispersion doublet analysis needs 0 < s < sqrt(3)");
    }
    double w = std::sqrt(1 + s * s);
    return {s / (2 * (1 + w)), -2 * s / (1 + s * s), w, std::sqrt(s * s + 1 + 2 * w), dispersion_ratio(s)};
}

AntiphaseFeatures antiphase_features(double s) {
    if (!(s > 0)) {
        throw Error("antiphase doublet analysis needs s > 0");
    }
    double s2 = s * s;
    double sep = std::sqrt((s2 - 1 + 2 * std::sqrt(s2 * s2 + s2 + 1)) / 3);
    return {sep, doublet_profile(s, DoubletMode::AntiphaseAbs)(sep / 2)};
}

DoubletFit fit_j_from_dispersion(const Spectrum &spec, double center_hz, double window_hz, double symmetry_tolerance) {
    spec.validate();
    if (!(window_hz > 0)) {
        throw Error("fit window must be positive");
    }
    double lo = center_hz - window_hz / 2, hi = center_hz + window_hz / 2;
    std::vector<size_t> idx;
    for (size_t k = 0; k < spec.freqs_hz.size(); k++) {
        if (spec.freqs_hz[k] >= lo && spec.freqs_hz[k] <= hi) {
            idx.push_back(k);
        }
    }
    if (idx.size() < 5) {
        throw Error("fit window holds too few points");
    }
    std::vector<double> re(spec.values.size());
    for (size_t k : idx) {
        re[k] = spec.values[k].real();
    }
    size_t first = idx.front(), last = idx.back();
    size_t kmin = first;
    for (size_t k : idx) {
        if (re[k] < re[kmin]) {
            kmin = k;
        }
    }
    if (!(re[kmin] < 0) || kmin == first || kmin == last) {
        throw Error("window holds no central minimum of a dispersion-mode antiphase doublet");
    }
    size_t left = first, right = kmin + 1;
    for (size_t k = first; k < kmin; k++) {
        if (re[k] > re[left]) {
            left = k;
        }
    }
    for (size_t k = kmin + 1; k <= last; k++) {
        if (re[k] > re[right]) {
            right = k;
        }
    }
    if (left == first || right == last || !(re[left] > 0) || !(re[right] > 0)) {
        throw Error("fewer than two maxima flank the minimum inside the window");
    }
    Extremum el = refine(re, left), em = refine(re, kmin), er = refine(re, right);
    double big = std::max(el.value, er.value);
    if (std::abs(el.value - er.value) > symmetry_tolerance * big) {
        throw Error("doublet maxima differ by more than the symmetry tolerance");
    }
    double df = spec.freqs_hz[first + 1] - spec.freqs_hz[first];
    double sep_hz = (er.pos - el.pos) * df;
    double m_max = 0.5 * (el.value + er.value);
    double r = m_max / std::abs(em.value);
    double r_lo = dispersion_ratio(0), r_hi = dispersion_ratio(std::sqrt(3.0));
    if (!(r > r_lo && r < r_hi)) {
        throw Error("amplitude ratio " + std::to_string(r) + " lies outside the invertible range (" +
                    std::to_string(r_lo) + ", " + std::to_string(r_hi) + ")");
    }
    double w = 2 * r + 2 * std::sqrt(r * r + r);
    double s = std::sqrt(w * w - 1);
    double du_max = std::sqrt(s * s + 1 + 2 * w);
    double lw = 2 * kPi * sep_hz / du_max;
    return {s, lw, s * lw / (2 * kPi), r, du_max};
}

Spectrum synthesize_doublet(double j_hz, double linewidth_rad_s, double center_hz, DoubletMode mode,
                            const std::vector<double> &freqs_hz) {
    if (!(j_hz >= 0) || !(linewidth_rad_s > 0)) {
        throw Error("doublet needs J >= 0 and a positive linewidth");
    }
    double s = 2 * kPi * j_hz / linewidth_rad_s;
    Spectrum out;
    out.freqs_hz = freqs_hz;
    out.values.resize(freqs_hz.size());
    for (size_t k = 0; k < freqs_hz.size(); k++) {
        double u = 2 * kPi * (freqs_hz[k] - center_hz) / linewidth_rad_s;
        Complex a = lorentz(u - s / 2), b = lorentz(u + s / 2);
        switch (mode) {
            case DoubletMode::InphaseAbs:
                out.values[k] = a + b;
                break;
            case DoubletMode::AntiphaseAbs:
                out.values[k] = a - b;
                break;
            case DoubletMode::AntiphaseDisp:
                out.values[k] = Complex(0, -1) * (a - b);
                break;
        }
    }
    out.validate();
    return out;
}

std::vector<double> uniform_axis(double lo_hz, double hi_hz, size_t n) {
    if (n < 2 || !(hi_hz > lo_hz)) {
        throw Error("axis needs at least two points and hi > lo");
    }
    std::vector<double> f(n);
    for (size_t k = 0; k < n; k++) {
        f[k] = lo_hz + (hi_hz - lo_hz) * (double)k / (double)(n - 1);
    }
    return f;
}

}  // namespace djnmr
