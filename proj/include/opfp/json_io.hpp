// This file is part of the opfp library.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <json.hpp>

#include "opfp/cp_map.hpp"
#include "opfp/distribution.hpp"
#include "opfp/nc_partitions.hpp"

namespace opfp::io {

// All numeric payloads use [re, im] pairs; object key order is stable.
using json = nlohmann::ordered_json;

json complex_to_json(const Complex& z);
Complex complex_from_json(const json& j);

json mat_to_json(const Mat& m);
Mat mat_from_json(const json& j);

// {"kraus": [matrix, ...], "weight": "p/q"}
json cpmap_to_json(const CpMap& eta);
CpMap cpmap_from_json(const json& j);

// Sorted pair list, e.g. [[1,4],[2,3]].
json partition_to_json(const nc::NcPairPartition& g);
nc::NcPairPartition partition_from_json(const json& j);

// {"kind": "bernoulli"|"semicircle"|"arcsine", "variance": cpmap}
// {"kind": "matrix_model", "X": matrix, "k": level}
// {"kind": "zero", "dim": d}
DistPtr law_from_json(const json& j);

json load_json_file(const std::string& path);

}  // namespace opfp::io
