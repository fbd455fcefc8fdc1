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

#include "djnmr/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace djnmr {

namespace {

constexpr double kWidth = 900;
constexpr double kMainHeight = 260;
constexpr double kInsetHeight = 180;
constexpr double kMargin = 30;

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// Frequency decreases left to right, as on a spectrometer.
std::string panel(const Spectrum &spec, double lo, double hi, double x0, double y0, double w, double h,
                  const std::string &label) {
    double peak = 0;
    for (size_t k = 0; k < spec.freqs_hz.size(); k++) {
        if (spec.freqs_hz[k] >= lo && spec.freqs_hz[k] <= hi) {
            peak = std::max(peak, std::abs(spec.values[k].real()));
        }
    }
    if (peak == 0) {
        peak = 1;
    }
    std::string out = "<g>\n<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" + num(w) + "\" height=\"" +
                      num(h) + "\" fill=\"none\" stroke=\"#999\"/>\n";
    double mid = y0 + h / 2;
    out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(mid) + "\" x2=\"" + num(x0 + w) + "\" y2=\"" + num(mid) +
           "\" stroke=\"#ddd\"/>\n";
    out += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
    for (size_t k = 0; k < spec.freqs_hz.size(); k++) {
        double f = spec.freqs_hz[k];
        if (f < lo || f > hi) {
            continue;
        }
        double x = x0 + (hi - f) / (hi - lo) * w;
        double y = mid - spec.values[k].real() / peak * (h / 2 - 4);
        out += num(x) + "," + num(y) + " ";
    }
    out += "\"/>\n";
    out += "<text x=\"" + num(x0 + 4) + "\" y=\"" + num(y0 + 14) + "\" font-size=\"12\">" + escape(label) +
           "</text>\n";
    out += "<text x=\"" + num(x0) + "\" y=\"" + num(y0 + h + 14) + "\" font-size=\"10\">" + num(hi) + "</text>\n";
    out += "<text x=\"" + num(x0 + w) + "\" y=\"" + num(y0 + h + 14) + "\" font-size=\"10\" text-anchor=\"end\">" +
           num(lo) + " Hz</text>\n</g>\n";
    return out;
}

}  // namespace

std::string spectrum_svg(const Spectrum &spec, const std::vector<Window> &windows, const std::string &title) {
    spec.validate();
    if (spec.freqs_hz.empty()) {
        throw Error("cannot plot an empty spectrum");
    }
    size_t n = windows.size();
    double inset_w = n ? (kWidth - kMargin * (double)(n + 1)) / (double)n : 0;
    double height = kMargin * 3 + kMainHeight + (n ? kInsetHeight + kMargin : 0);
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
                      num(height) + "\" font-family=\"sans-serif\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += panel(spec, spec.freqs_hz.front(), spec.freqs_hz.back(), kMargin, kMargin, kWidth - 2 * kMargin,
                 kMainHeight, title);
    double y = kMargin * 2.5 + kMainHeight;
    // Insets in the order spins appear on the main axis.
    for (size_t k = 0; k < n; k++) {
        size_t w = n - 1 - k;
        double x = kMargin + (double)k * (inset_w + kMargin);
        out += panel(spec, windows[w].lo_hz, windows[w].hi_hz, x, y, inset_w, kInsetHeight, "spin " + std::to_string(w));
    }
    out += "</svg>\n";
    return out;
}

}  // namespace djnmr
