#pragma once

#include <iosfwd>

#include <json.hpp>

#include "trl/binary_cubic.hpp"
#include "trl/ff_oracle.hpp"
#include "trl/multilinear.hpp"
#include "trl/numeric_rank.hpp"
#include "trl/tensor.hpp"

namespace trl {

using Json = nlohmann::json;

// Scalars: gfP -> integer residue, rational -> "num/den", float64 -> number,
// complex128 -> [re, im]. Readers also accept plain integers for rationals and
// plain numbers for complex entries.
Json scalar_to_json(const Scalar& x);
Scalar scalar_from_json(const Json& j, const FieldTag& tag);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j, const FieldTag& tag);

// {"order", "dim", "field", "entries"} with optional 1-based "sparse" entries.
Json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const Json& j);
Tensor read_tensor(std::istream& in);

struct DecompositionFile {
  Decomposition decomposition;
  FieldTag field = FieldTag::rational();
  int order = 0;
  int dim = 0;
};

Json decomposition_to_json(const Decomposition& dec, int order, int dim, const FieldTag& tag);
DecompositionFile decomposition_from_json(const Json& j);

Json certificate_to_json(const KruskalCertificate& c);
Json trace_to_json(const CaseTrace& trace);
Json rank_report_to_json(const RankReport& report);
Json census_to_json(const CensusReport& report);
Json sweep_to_json(const SweepReport& report);
Json pencil_to_json(const PencilVerdict& verdict);
Json border_form_to_json(const BorderForm& form);
BorderForm border_form_from_json(const Json& j);
Json sym_rank1_to_json(const SymRankOne& r, bool trajectories);
Json banach_to_json(const BanachReport& r);

// Parses JSON text; malformed input raises Error(kParseError).
Json parse_json(std::istream& in);

}  // namespace trl
