// Copyright (c) pcsynth contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcsynth/net.hpp"

namespace pcsynth {

// Positioned message about a model text. Warnings start with "warning:";
// everything else is an error.
struct Diagnostic {
    size_t line = 0;    // 1-based
    size_t column = 0;  // 1-based
    std::string message;

    bool is_error() const { return message.rfind("warning:", 0) != 0; }
    bool operator==(const Diagnostic&) const = default;
};

std::string format_diagnostic(const Diagnostic& d);

struct ParsedModel {
    std::optional<PcTPN> net;  // engaged exactly when no diagnostic is an error
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return net.has_value(); }
};

// Line-oriented model text. '#' starts a comment. Lines:
//   net <name>
//   param <id>
//   place <id> init <nat>
//   rate <int>*<place> (+ <int>*<place>)* (+ <int>)?
//   trans <id> in <place>:<nat>(,<place>:<nat>)* out <place>:<nat>(,...)
//         interval [<bound>,<bound|inf>] cost <int>
// where <bound> is a natural or a declared parameter. Names must be declared
// before use; 'cost <int>' may be omitted (0); at most one rate line.
ParsedModel parse_model(const std::string& text);

// Canonical text for a net; parse_model(render_model(net)) reproduces the
// net field for field whenever the net itself came from parse_model.
std::string render_model(const PcTPN& net);

}  // namespace pcsynth
