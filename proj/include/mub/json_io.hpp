#pragma once

#include <string>

#include <json.hpp>

#include "mub/classes.hpp"
#include "mub/projections.hpp"
#include "mub/tomography.hpp"

namespace mub {

inline constexpr int kSchemaVersion = 1;

/// Matrices serialize as row-major arrays of [re, im] pairs.
nlohmann::json matrix_to_json(const DenseMatrix& M);
nlohmann::json vector_to_json(const Eigen::VectorXcd& v);
DenseMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PhasedSpinOp& op);  // {d, j, k, phase_exp}

/// {schema_version, p, n, d, poly, D?, classes:[{label, generators, members}]}
nlohmann::json family_to_json(const MubFamily& fam);
MubFamily family_from_json(const nlohmann::json& j);

/// Adds per-class "projections" and "basis" arrays to a family dump.
nlohmann::json family_with_projections_json(const MubFamily& fam, const std::vector<ProjectionFamily>& projs,
                                            bool include_matrices);

nlohmann::json record_to_json(const MeasurementRecord& rec);

/// The class grid: rows are x-digit strings, columns y-digit strings, cells
/// the class label owning the interleaved vector.
std::string grid_csv(const MubFamily& fam);

}  // namespace mub
