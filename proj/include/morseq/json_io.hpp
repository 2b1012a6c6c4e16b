#pragma once

// Canonical JSON forms.  Output keys keep a fixed order and weights are
// sorted, so identical inputs give byte-identical documents.

#include <string>

#include "json.hpp"
#include "morseq/cech.hpp"
#include "morseq/character.hpp"
#include "morseq/fixed_point.hpp"
#include "morseq/flag.hpp"
#include "morseq/flow_poset.hpp"
#include "morseq/morse.hpp"
#include "morseq/toric.hpp"

namespace morseq::io {

using Json = nlohmann::ordered_json;

/// Parses a file; InvalidInput names the file on failure.
Json read_json_file(const std::string& path);

Json to_json(const Weight& w);
Weight weight_from_json(const Json& j, std::size_t rank, const std::string& what);

/// [{"w":[..],"c":k}, ...]; coefficients beyond 64 bits are strings.
Json to_json(const FiniteCharacter& c);
FiniteCharacter character_from_json(const Json& j, std::size_t rank, const std::string& what);

/// {"num":..,"dens":[[..]],"sign":"+"|"-"}
Json to_json(const PolarizedRational& s);
PolarizedRational rational_from_json(const Json& j, const ChamberVector& chamber, const std::string& what);
Json to_json(const RationalSum& s);

/// [{"degree":d,"terms":[rational..]}]
Json to_json(const GradedCharacter& g);
/// [{"q":d,"character":[..]}]
Json to_json(const BoxedGraded& g);
/// Accepts {"cohomology":[{"q","character"}]} or {"<q>": character, ...}.
BoxedGraded boxed_graded_from_json(const Json& j, std::size_t rank, const std::string& what);

Json to_json(const FixedPointDataset& ds);
FixedPointDataset dataset_from_json(const Json& j);

Json to_json(const FlowDigraph& g);
FlowDigraph digraph_from_json(const Json& j);
Json to_json(const Filtration& f);

Json to_json(const Fan& f);
Fan fan_from_json(const Json& j);
ToricDivisor divisor_from_json(const Json& j);

Json to_json(const CoordinateBox& b);
Json to_json(const E1Page& page);
Json to_json(const SpectralSequence& ss);
Json to_json(const MorseReport& rep);

}  // namespace morseq::io
