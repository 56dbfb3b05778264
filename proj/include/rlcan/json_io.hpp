#ifndef RLCAN_JSON_IO_HPP
#define RLCAN_JSON_IO_HPP

#include <map>
#include <string>

#include <json.hpp>

#include "rlcan/algebra.hpp"
#include "rlcan/frames.hpp"
#include "rlcan/lattice.hpp"

namespace rlcan {

// Keys keep insertion order so identical inputs dump byte-identically.
using Json = nlohmann::ordered_json;

Json lattice_to_json(const FiniteDL& a);
Result<FiniteDL> lattice_from_json(const Json& j);

Json dle_to_json(const DLE& a);
Result<DLE> dle_from_json(const Json& j);

// gammaLRes/gammaRRes (and the dual residual components) may be omitted in
// input files; they are then reconstructed as the transposes of the tensor
// (par) component, which requires RCC.
Json frame_to_json(const ResourceFrame& f);
Result<ResourceFrame> frame_from_json(const Json& j);

Json valuation_to_json(const std::map<std::string, Mask>& v);
Result<std::map<std::string, Mask>> valuation_from_json(const Json& j,
                                                        int worlds);

Json model_to_json(const ResourceFrame& f,
                   const std::map<std::string, Mask>& v);

Json error_to_json(const Error& e);

}  // namespace rlcan

#endif
