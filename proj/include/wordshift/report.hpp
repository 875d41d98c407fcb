#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "wordshift/shift.hpp"

namespace wordshift {

using Json = nlohmann::ordered_json;

// Document with top-level keys meta, totals, class_sums, contributions,
// cumulative, corpus_sizes. `meta` is merged into the generated meta block.
Json shift_result_to_json(const ShiftResult& result, const Json& meta = Json::object());

// Inverse of to_json. Throws InvalidArgument on schema violations.
ShiftResult shift_result_from_json(const Json& doc);

// word, delta, freq_comp, score_comp, class, borrowed; one header line.
void write_tsv(std::ostream& out, const ShiftResult& result);

}  // namespace wordshift
