#include "kraichnan/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kraichnan {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_csv: cannot open " + path);
  for (size_t i = 0; i < header.size(); ++i)
    f << (i ? "," : "") << csv_escape(header[i]);
  f << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("write_csv: ragged row");
    for (size_t i = 0; i < row.size(); ++i)
      f << (i ? "," : "") << csv_escape(row[i]);
    f << '\n';
  }
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string canonical_config_string(const SdeConfig& cfg,
                                    const Configuration& x0,
                                    const std::string& tag) {
  std::ostringstream os;
  os.precision(17);
  os << "tag=" << tag << ";n=" << cfg.params.n << ";d=" << cfg.params.d
     << ";xi=" << cfg.params.xi << ";dt_base=" << cfg.dt_base
     << ";t_max=" << cfg.t_max << ";adapt_floor=" << cfg.adapt_floor
     << ";seed=" << cfg.seed << ";paths=" << cfg.paths
     << ";metric_split_l=" << cfg.metric_split_l << ";x0=";
  for (int i = 0; i < x0.dim(); ++i) os << x0.flat()[i] << ",";
  return os.str();
}

namespace {
constexpr char kMagic[8] = {'K', 'R', 'E', 'N', 'S', 'B', '0', '1'};

template <typename T>
void put(std::ofstream& f, const T& v) {
  f.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void get(std::ifstream& f, T& v) {
  f.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!f) throw std::runtime_error("ensemble cache: truncated file");
}
}  // namespace

void save_ensemble(const std::string& path, const PathEnsemble& ens) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("save_ensemble: cannot open " + path);
  f.write(kMagic, sizeof(kMagic));
  put(f, ens.config_hash);
  put(f, ens.seed);
  std::int64_t dim = ens.endpoints.rows(), paths = ens.endpoints.cols();
  std::int64_t nobs = static_cast<std::int64_t>(ens.occupation.size());
  put(f, dim);
  put(f, paths);
  put(f, nobs);
  f.write(reinterpret_cast<const char*>(ens.endpoints.data()),
          sizeof(double) * dim * paths);
  for (const Mat& occ : ens.occupation) {
    std::int64_t size = occ.rows();
    put(f, size);
    f.write(reinterpret_cast<const char*>(occ.data()),
            sizeof(double) * size * paths);
  }
  f.write(reinterpret_cast<const char*>(ens.sup_distance.data()),
          sizeof(double) * paths);
  f.write(reinterpret_cast<const char*>(ens.flagged.data()), paths);
  if (!f) throw std::runtime_error("save_ensemble: write failed");
}

bool load_ensemble(const std::string& path, std::uint64_t expected_hash,
                   PathEnsemble& out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  char magic[8];
  f.read(magic, sizeof(magic));
  if (!f || std::memcmp(magic, kMagic, sizeof(magic)) != 0)
    throw std::runtime_error("load_ensemble: bad magic in " + path);
  std::uint64_t hash;
  get(f, hash);
  if (hash != expected_hash)
    throw std::runtime_error("load_ensemble: config hash mismatch in " + path +
                             " (cache corruption)");
  get(f, out.seed);
  out.config_hash = hash;
  std::int64_t dim, paths, nobs;
  get(f, dim);
  get(f, paths);
  get(f, nobs);
  out.endpoints.resize(dim, paths);
  f.read(reinterpret_cast<char*>(out.endpoints.data()),
         sizeof(double) * dim * paths);
  out.occupation.resize(nobs);
  for (std::int64_t o = 0; o < nobs; ++o) {
    std::int64_t size;
    get(f, size);
    out.occupation[o].resize(size, paths);
    f.read(reinterpret_cast<char*>(out.occupation[o].data()),
           sizeof(double) * size * paths);
  }
  out.sup_distance.resize(paths);
  f.read(reinterpret_cast<char*>(out.sup_distance.data()),
         sizeof(double) * paths);
  out.flagged.resize(paths);
  f.read(reinterpret_cast<char*>(out.flagged.data()), paths);
  if (!f) throw std::runtime_error("load_ensemble: truncated file " + path);
  return true;
}

}  // namespace kraichnan
