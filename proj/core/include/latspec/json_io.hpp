#pragma once

#include <string>

#include "latspec/choquet.hpp"
#include "latspec/eigenfunction.hpp"
#include "latspec/graph.hpp"

namespace latspec {

/// Round-trip-safe number formatting: 17 significant digits, -0 collapsed.
std::string format_number(double x);

/// Graph documents: {"dimension", "vertices": [{"name","potential"}...],
/// "edges": [{"tail","head","offset","weight"}...], "base_vertex"}.
/// Unknown keys are rejected at every level.
PeriodicGraph graph_from_json(const std::string& text);
std::string graph_to_json(const PeriodicGraph& g);

/// {"alpha": [...], "lambda": x, "profile": {vertex: value}}
std::string eigenfunction_to_json(const MultiplicativeEigenfunction& f);

/// {"lambda": x, "atoms": [{"alpha": [...], "weight": w}...]}; an optional
/// "residual" key (as written by decompose) is accepted and ignored.
DiscreteMeasure measure_from_json(const std::string& text);
std::string measure_to_json(const DiscreteMeasure& m);

/// {"box": {"lo": [...], "hi": [...]}, "values": [{"offset": [...],
/// "vertex": name, "value": x}...]}
WindowFunction window_from_json(const std::string& text,
                                const PeriodicGraph& g);
std::string window_to_json(const WindowFunction& w, const PeriodicGraph& g);

}  // namespace latspec
