#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "mvl/demorgan.hpp"
#include "mvl/mvalued_set.hpp"
#include "mvl/point_set.hpp"

namespace mvl {

using Json = nlohmann::json;

/// {"name", "elements", "join", "meet", "neg", "zero", "one"} with entries given as labels.
Json algebra_to_json(const DeMorganAlgebra& m);
/// Unknown labels become out-of-range ids so that validate() reports them as malformed.
AlgebraTables algebra_tables_from_json(const Json& j);
/// A built-in name ("B2", "K3", "FOUR") or a path to an algebra file. Throws InputError.
AlgebraPtr load_algebra(std::string_view name_or_path);

/// {"valid", "malformed": [...], "violations": [{"axiom", "witness": [labels]}]}; ids outside the
/// element list print as their number.
Json validation_report_to_json(const ValidationReport& r, const AlgebraTables& t);

Json read_json_file(const std::string& path);

Json space_to_json(const Space& s);
Space space_from_json(const Json& j);

/// Sorted list of tuples.
Json point_set_to_json(const PointSet& x);
PointSet point_set_from_json(const Space& space, const Json& j);

/// {"algebra", "space", "layers": {label: [tuples]}}; empty layers are omitted.
Json mvalued_set_to_json(const MValuedSet& x);
/// Layers keyed by label; absent labels are empty. Enforces the partition invariant.
MValuedSet mvalued_set_from_json(const Json& j, const AlgebraPtr& algebra);
/// Layer map only, over a known space.
MValuedSet layers_from_json(const Json& layers, const AlgebraPtr& algebra, const Space& space);
Json layers_to_json(const MValuedSet& x);

}  // namespace mvl
