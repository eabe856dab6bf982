#pragma once

#include <map>
#include <optional>
#include <string>

#include "elastica/fields.hpp"
#include "elastica/polygon.hpp"
#include "elastica/srvt.hpp"

namespace elastica {

// On-disk JSON exchange format, schema_version 1:
//
//   {
//     "schema_version": 1,
//     "grid": {"n": 4, "d": 2},
//     "role": "polygon" | "tangent" | "covector" | "srv_pair",
//     "values": [[...d numbers...] x n],   // srv_pair: rows [e_i, f_i]
//     "flags": {"mean_zero": bool, "sum_zero": bool},   // optional
//     "metadata": {"key": "value", ...}                 // optional, strings
//   }
//
// Loading re-validates every declared invariant; structural problems raise
// SchemaError (with a JSON-pointer-style path), semantic ones ValidationError.
// Numbers are serialized in shortest round-trip decimal form; NaN/Inf are
// rejected in both directions.

enum class DocumentRole { polygon, tangent, covector, srv_pair };

std::string role_name(DocumentRole role);
DocumentRole role_from_name(const std::string& name);

struct DocumentFlags {
  std::optional<bool> mean_zero;
  std::optional<bool> sum_zero;
};

struct CurveDocument {
  int schema_version;
  GridInfo grid;
  DocumentRole role;
  Eigen::MatrixXd values;
  DocumentFlags flags;
  std::map<std::string, std::string> metadata;
};

CurveDocument load_document(const std::string& path);
void save_document(const std::string& path, const CurveDocument& doc);

// Re-run the semantic checks performed at load time (flag invariants plus
// the role-specific constructor).
void validate_document(const CurveDocument& doc);

// Role-checked conversions; ValidationError on role mismatch.
Polygon to_polygon(const CurveDocument& doc);
VertexField to_vertex_field(const CurveDocument& doc);
Covector to_covector(const CurveDocument& doc);
SqrtVelocityPair to_srv_pair(const CurveDocument& doc);

CurveDocument from_polygon(const Polygon& c);
CurveDocument from_vertex_field(const VertexField& h);
CurveDocument from_covector(const Covector& a);
CurveDocument from_srv_pair(const SqrtVelocityPair& s);

}  // namespace elastica
