#ifndef RXO_SNAPSHOT_HPP_
#define RXO_SNAPSHOT_HPP_

#include <string>

#include "rxo/database.hpp"

namespace rxo {

// Deterministic text snapshot: equal databases produce byte-equal streams.
// Layout: header (format version, next oid), the catalog dump, then one
// record per object in ascending-oid order with typed literals.
std::string snapshot_save(const Database& db);

// Inverse of snapshot_save; throws CorruptSnapshot (with the offending line)
// or VersionMismatch.
Database snapshot_load(const std::string& stream);

void snapshot_write_file(const Database& db, const std::string& path);
Database snapshot_read_file(const std::string& path);

}  // namespace rxo

#endif  // RXO_SNAPSHOT_HPP_
