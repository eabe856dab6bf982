#include "elastica/document.hpp"

#include <fstream>

#include <json.hpp>

#include "elastica/constants.hpp"

namespace elastica {

using nlohmann::json;

std::string role_name(DocumentRole role) {
  switch (role) {
    case DocumentRole::polygon: return "polygon";
    case DocumentRole::tangent: return "tangent";
    case DocumentRole::covector: return "covector";
    case DocumentRole::srv_pair: return "srv_pair";
  }
  throw ValidationError("document: unknown role enum value");
}

DocumentRole role_from_name(const std::string& name) {
  if (name == "polygon") return DocumentRole::polygon;
  if (name == "tangent") return DocumentRole::tangent;
  if (name == "covector") return DocumentRole::covector;
  if (name == "srv_pair") return DocumentRole::srv_pair;
  throw SchemaError("/role: unknown role '" + name + "'");
}

namespace {

const json& require_key(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + ": missing key '" + key + "'");
  return *it;
}

int require_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path + ": expected an integer");
  return v.get<int>();
}

}  // namespace

CurveDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("document: cannot open '" + path + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError("document '" + path + "': " + e.what());
  }
  if (!root.is_object()) throw SchemaError("/: expected an object");

  const int version = require_int(require_key(root, "schema_version", "/"), "/schema_version");
  if (version != 1)
    throw SchemaError("/schema_version: unsupported version " + std::to_string(version));

  const json& jgrid = require_key(root, "grid", "/");
  if (!jgrid.is_object()) throw SchemaError("/grid: expected an object");
  const int n = require_int(require_key(jgrid, "n", "/grid"), "/grid/n");
  const int d = require_int(require_key(jgrid, "d", "/grid"), "/grid/d");

  const json& jrole = require_key(root, "role", "/");
  if (!jrole.is_string()) throw SchemaError("/role: expected a string");
  const DocumentRole role = role_from_name(jrole.get<std::string>());

  const json& jvalues = require_key(root, "values", "/");
  if (!jvalues.is_array() || static_cast<int>(jvalues.size()) != n)
    throw SchemaError("/values: expected an array of " + std::to_string(n) + " rows");

  GridInfo grid = [&] {
    try {
      return GridInfo(n, d);
    } catch (const Error& e) {
      throw ValidationError(std::string("/grid: ") + e.what());
    }
  }();

  Eigen::MatrixXd values(n, d);
  for (int i = 0; i < n; ++i) {
    const json& row = jvalues[i];
    const std::string row_path = "/values/" + std::to_string(i);
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw SchemaError(row_path + ": expected " + std::to_string(d) + " numbers");
    for (int j = 0; j < d; ++j) {
      const json& cell = row[j];
      if (!cell.is_number())
        throw SchemaError(row_path + "/" + std::to_string(j) + ": expected a number");
      values(i, j) = cell.get<double>();
    }
  }

  DocumentFlags flags;
  if (auto it = root.find("flags"); it != root.end()) {
    if (!it->is_object()) throw SchemaError("/flags: expected an object");
    for (auto& [key, val] : it->items()) {
      if (!val.is_boolean()) throw SchemaError("/flags/" + key + ": expected a boolean");
      if (key == "mean_zero")
        flags.mean_zero = val.get<bool>();
      else if (key == "sum_zero")
        flags.sum_zero = val.get<bool>();
      else
        throw SchemaError("/flags/" + key + ": unknown flag");
    }
  }

  std::map<std::string, std::string> metadata;
  if (auto it = root.find("metadata"); it != root.end()) {
    if (!it->is_object()) throw SchemaError("/metadata: expected an object");
    for (auto& [key, val] : it->items()) {
      if (!val.is_string()) throw SchemaError("/metadata/" + key + ": expected a string");
      metadata[key] = val.get<std::string>();
    }
  }

  CurveDocument doc{version, grid, role, std::move(values), flags, std::move(metadata)};
  validate_document(doc);
  return doc;
}

void validate_document(const CurveDocument& doc) {
  if (!doc.values.allFinite()) throw ValidationError("document: non-finite value");
  if (doc.values.rows() != doc.grid.n || doc.values.cols() != doc.grid.d)
    throw ValidationError("document: values shape does not match grid");

  const double colsum = column_sum_inf_norm(doc.values);
  if (doc.flags.mean_zero.value_or(false) && colsum > kMeanZeroTol)
    throw ValidationError("document: declared mean_zero violated, |sum|_inf = " +
                          std::to_string(colsum));
  if (doc.flags.sum_zero.value_or(false) && colsum > kMeanZeroTol)
    throw ValidationError("document: declared sum_zero violated, |sum|_inf = " +
                          std::to_string(colsum));

  // Role-specific construction doubles as the invariant check.
  try {
    switch (doc.role) {
      case DocumentRole::polygon:
        Polygon(doc.grid, doc.values);
        break;
      case DocumentRole::srv_pair:
        if (doc.grid.d != 2)
          throw ValidationError("document: srv_pair requires d = 2");
        SqrtVelocityPair(doc.values.col(0), doc.values.col(1));
        break;
      case DocumentRole::tangent:
      case DocumentRole::covector:
        break;
    }
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(std::string("document: ") + e.what());
  }
}

void save_document(const std::string& path, const CurveDocument& doc) {
  if (!doc.values.allFinite()) throw ValidationError("document: refusing to save non-finite value");
  json root;
  root["schema_version"] = doc.schema_version;
  root["grid"] = {{"n", doc.grid.n}, {"d", doc.grid.d}};
  root["role"] = role_name(doc.role);
  json rows = json::array();
  for (int i = 0; i < doc.grid.n; ++i) {
    json row = json::array();
    for (int j = 0; j < doc.grid.d; ++j) row.push_back(doc.values(i, j));
    rows.push_back(std::move(row));
  }
  root["values"] = std::move(rows);
  if (doc.flags.mean_zero || doc.flags.sum_zero) {
    json flags = json::object();
    if (doc.flags.mean_zero) flags["mean_zero"] = *doc.flags.mean_zero;
    if (doc.flags.sum_zero) flags["sum_zero"] = *doc.flags.sum_zero;
    root["flags"] = std::move(flags);
  }
  if (!doc.metadata.empty()) {
    json meta = json::object();
    for (const auto& [key, val] : doc.metadata) meta[key] = val;
    root["metadata"] = std::move(meta);
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("document: cannot write '" + path + "'");
  out << root.dump(2) << "\n";
  if (!out) throw ValidationError("document: write failed for '" + path + "'");
}

namespace {
void require_role(const CurveDocument& doc, DocumentRole want, const char* converter) {
  if (doc.role != want)
    throw ValidationError(std::string(converter) + ": document role is '" +
                          role_name(doc.role) + "', expected '" + role_name(want) + "'");
}
}  // namespace

Polygon to_polygon(const CurveDocument& doc) {
  require_role(doc, DocumentRole::polygon, "to_polygon");
  return Polygon(doc.grid, doc.values, doc.flags.mean_zero.value_or(false));
}

VertexField to_vertex_field(const CurveDocument& doc) {
  require_role(doc, DocumentRole::tangent, "to_vertex_field");
  return VertexField(doc.grid, doc.values, doc.flags.mean_zero.value_or(false));
}

Covector to_covector(const CurveDocument& doc) {
  require_role(doc, DocumentRole::covector, "to_covector");
  return Covector(doc.grid, doc.values, doc.flags.sum_zero.value_or(false));
}

SqrtVelocityPair to_srv_pair(const CurveDocument& doc) {
  require_role(doc, DocumentRole::srv_pair, "to_srv_pair");
  return SqrtVelocityPair(doc.values.col(0), doc.values.col(1));
}

CurveDocument from_polygon(const Polygon& c) {
  DocumentFlags flags;
  if (c.mean_zero()) flags.mean_zero = true;
  return CurveDocument{1, c.grid(), DocumentRole::polygon, c.vertices(), flags, {}};
}

CurveDocument from_vertex_field(const VertexField& h) {
  DocumentFlags flags;
  if (h.mean_zero) flags.mean_zero = true;
  return CurveDocument{1, h.grid, DocumentRole::tangent, h.values, flags, {}};
}

CurveDocument from_covector(const Covector& a) {
  DocumentFlags flags;
  if (a.sum_zero) flags.sum_zero = true;
  return CurveDocument{1, a.grid, DocumentRole::covector, a.values, flags, {}};
}

CurveDocument from_srv_pair(const SqrtVelocityPair& s) {
  Eigen::MatrixXd values(s.n(), 2);
  values.col(0) = s.e();
  values.col(1) = s.f();
  return CurveDocument{1, s.grid(), DocumentRole::srv_pair, std::move(values), {}, {}};
}

}  // namespace elastica
