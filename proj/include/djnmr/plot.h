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

#ifndef DJNMR_PLOT_H
#define DJNMR_PLOT_H

#include <string>
#include <vector>

#include "djnmr/spectra.h"

namespace djnmr {

/// Real part of the spectrum as an SVG document: the full axis on top and one
/// inset per window below it, each scaled to its own maximum.
std::string spectrum_svg(const Spectrum &spec, const std::vector<Window> &windows, const std::string &title);

}  // namespace djnmr

#endif
