// CSV series emission with full round-trip precision, a matching reader, and
// deterministic JSON report writing.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "stokeslab/types.hpp"

namespace stokeslab {

// Writes rows as CSV with header x1,...,x_{n-1},xn,t,component,value,error
// (UTF-8, LF endings, shortest round-trip decimal formatting).
void emit_series(const std::string& path, const std::vector<FieldSample>& rows,
                 int n);

// Reads a file produced by emit_series; values are bit-identical.
std::vector<FieldSample> read_series(const std::string& path, int* n_out);

// Serializes with sorted keys and a trailing newline; no timestamps, so
// identical inputs produce byte-identical files.
void write_json(const std::string& path, const nlohmann::json& doc);

std::string format_double(double v);  // shortest decimal that round-trips

}  // namespace stokeslab
