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

#ifndef DJNMR_IO_H
#define DJNMR_IO_H

#include <string>

#include "djnmr/compiler.h"
#include "djnmr/functions.h"
#include "djnmr/simulator.h"
#include "djnmr/spectra.h"
#include "json.hpp"

namespace djnmr {

using Json = nlohmann::json;

/// Input file missing or unreadable.
struct InputError : Error {
    using Error::Error;
};
/// Output file cannot be written.
struct OutputError : Error {
    using Error::Error;
};

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &content);

/// Two-space indent, sorted keys, scalar arrays on one line, doubles with 17
/// significant digits.
std::string dump_json(const Json &j);
/// Parses text, raising Error with the parser message on failure.
Json parse_json(const std::string &text);

Json to_json(const SpinSystem &system);
SpinSystem system_from_json(const Json &j);

Json to_json(const GateOp &op);
GateOp gate_from_json(const Json &j);
Json to_json(const GateSequence &seq);
GateSequence sequence_from_json(const Json &j);

Json to_json(const PulseProgram &program);
PulseProgram program_from_json(const Json &j);

Json to_json(const Fid &fid);
Fid fid_from_json(const Json &j);

Json to_json(const DoubletFit &fit);
Json to_json(const FunctionSpec &spec);
Json to_json(const MultipletReport &report);

/// Header "freq_hz,re,im" then one row per point.
std::string spectrum_to_csv(const Spectrum &spec);
Spectrum spectrum_from_csv(const std::string &text);

}  // namespace djnmr

#endif
