#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kraichnan/sde.hpp"

namespace kraichnan {

/// RFC-4180-style CSV: fields containing comma, quote or newline are quoted,
/// quotes doubled; CRLF-free (LF line endings) for diff-friendliness.
std::string csv_escape(const std::string& field);
void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// FNV-1a hash of a canonical string; used as the config hash that stamps
/// every artifact and keys the ensemble cache.
std::uint64_t fnv1a64(const std::string& s);

/// Canonical stable string for an SdeConfig plus start point and a task tag.
std::string canonical_config_string(const SdeConfig& cfg,
                                    const Configuration& x0,
                                    const std::string& tag);

/// Binary ensemble cache.  Files carry the config hash; a hash mismatch on
/// load is a hard error (cache corruption), a missing file returns false.
void save_ensemble(const std::string& path, const PathEnsemble& ens);
bool load_ensemble(const std::string& path, std::uint64_t expected_hash,
                   PathEnsemble& out);

}  // namespace kraichnan
