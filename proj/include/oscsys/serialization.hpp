#pragma once

// File formats.
//
// Signal system document (JSON):
//   {
//     "format": "oscsys-signal-system", "version": 1,
//     "p": 7, "family": "split",
//     "conventions": { primitive_root, nonsplit_form_delta, phase, fourier_scale, ... },
//     "groups":  [ {"kind": "split"|"nonsplit", "witness": [a,b,c,d], "generator": [a,b,c,d]}
//                | {"kind": "line", "direction": [d0, d1]} ],
//     "signals": [ {"id", "family", "group", "character", "element": [a,b,c,d] | null,
//                   "samples": [[re, im], ...]} ]
//   }
// Doubles are written in shortest round-trip form, so reading a document back
// reproduces every sample bit for bit.
//
// Signal CSV: header "id,t0,...,t{p-1}", one row per signal, each cell "re+imj"
// with 17 significant digits.

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "oscsys/applications.hpp"

namespace oscsys {

using Json = nlohmann::json;

Json to_json(const SignalSystem& system);
// Throws std::invalid_argument on malformed documents.
SignalSystem system_from_json(const Json& doc);

void write_system_json(const SignalSystem& system, std::ostream& os);
SignalSystem read_system_json(std::istream& is);

std::string format_complex(Complex z);
// Parses "re+imj" / "re-imj"; throws std::invalid_argument.
Complex parse_complex(const std::string& text);

void write_system_csv(const SignalSystem& system, std::ostream& os);

Json to_json(const BoundReport& report);
Json to_json(const InnerProductReport& report);
Json to_json(const FourierClosureReport& report);
Json to_json(const AmbiguityTable& table);
Json to_json(const RadarReport& report);
Json to_json(const CdmaReport& report);
Json to_json(const StabilityReport& report);

void write_ambiguity_csv(const AmbiguityTable& table, std::ostream& os);

}  // namespace oscsys
