#pragma once

#include <string>

#include "json.hpp"

#include "dppt/countlaw.hpp"
#include "dppt/ground.hpp"
#include "dppt/kernel.hpp"
#include "dppt/linalg.hpp"
#include "dppt/transference.hpp"

namespace dppt {

using json = nlohmann::json;

json to_json(const GroundSpace& space);
GroundSpace space_from_json(const json& j);

json to_json(const Cell& cell);
Cell cell_from_json(const json& j, bool discrete);

// {"kind":"interval","cells":[[[0.0,0.5]],[[0.5,1.0]]]}
json to_json(const Partition& partition);
Partition partition_from_json(const json& j);

json to_json(const FunctionRep& f);
FunctionRep function_from_json(const json& j);

json to_json(const SpectralKernel& kernel);
SpectralKernel kernel_from_json(const json& j);

// {"q": row-major, "dim": d, "blocks": [[start,len],...], "leakage", "tol"}
json to_json(const TransferredKernel& q);
TransferredKernel transferred_from_json(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json to_json(const CountLaw& law);

// one line per atom: counts..., probability
std::string law_to_csv(const CountLaw& law);

// canonical text: sorted keys, no whitespace; the basis of config hashes
std::string canonical_dump(const json& j);

std::string sha256_hex(const std::string& bytes);

}  // namespace dppt
