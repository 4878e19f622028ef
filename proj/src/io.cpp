#include "dppt/io.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <sstream>

#include "dppt/errors.hpp"

namespace dppt {

json to_json(const GroundSpace& space) {
  if (space.is_discrete()) return {{"kind", "discrete"}, {"size", space.size}};
  return {{"kind", "interval"}, {"lo", space.lo}, {"hi", space.hi}};
}

GroundSpace space_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "discrete") return GroundSpace::discrete(j.at("size").get<int>());
  if (kind == "interval")
    return GroundSpace::interval(j.at("lo").get<double>(),
                                 j.at("hi").get<double>());
  throw validation_error("unknown space kind: " + kind);
}

json to_json(const Cell& cell) {
  json out = json::array();
  if (cell.is_discrete()) {
    for (int s : cell.site_list()) out.push_back(s);
  } else {
    for (const auto& p : cell.pieces()) out.push_back(json::array({p.a, p.b}));
  }
  return out;
}

Cell cell_from_json(const json& j, bool discrete) {
  if (discrete) {
    std::vector<int> sites;
    for (const auto& s : j) sites.push_back(s.get<int>());
    return Cell::sites(std::move(sites));
  }
  std::vector<Subinterval> pieces;
  for (const auto& p : j)
    pieces.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return Cell::intervals(std::move(pieces));
}

json to_json(const Partition& partition) {
  json cells = json::array();
  for (const auto& c : partition.cells()) cells.push_back(to_json(c));
  json out = to_json(partition.space());
  out["cells"] = std::move(cells);
  if (!partition.label().empty()) out["label"] = partition.label();
  return out;
}

Partition partition_from_json(const json& j) {
  const GroundSpace space = space_from_json(j);
  std::vector<Cell> cells;
  for (const auto& c : j.at("cells"))
    cells.push_back(cell_from_json(c, space.is_discrete()));
  return Partition(space, std::move(cells),
                   j.value("label", std::string{}));
}

json to_json(const FunctionRep& f) {
  if (f.is_discrete()) return {{"values", f.values()}};
  json pieces = json::array();
  for (const auto& p : f.piece_list())
    pieces.push_back({{"a", p.a}, {"b", p.b}, {"coeffs", p.coeffs}});
  return {{"pieces", std::move(pieces)}};
}

FunctionRep function_from_json(const json& j) {
  if (j.contains("values"))
    return FunctionRep::discrete(j.at("values").get<std::vector<double>>());
  std::vector<FunctionRep::Piece> pieces;
  for (const auto& p : j.at("pieces"))
    pieces.push_back({p.at("a").get<double>(), p.at("b").get<double>(),
                      p.at("coeffs").get<std::vector<double>>()});
  return FunctionRep::piecewise(std::move(pieces));
}

json to_json(const SpectralKernel& kernel) {
  json fns = json::array();
  for (const auto& f : kernel.eigenfunctions) fns.push_back(to_json(f));
  return {{"space", to_json(kernel.space)},
          {"eigenvalues", kernel.eigenvalues},
          {"eigenfunctions", std::move(fns)}};
}

SpectralKernel kernel_from_json(const json& j) {
  std::vector<FunctionRep> fns;
  for (const auto& f : j.at("eigenfunctions"))
    fns.push_back(function_from_json(f));
  return make_kernel(space_from_json(j.at("space")),
                     j.at("eigenvalues").get<std::vector<double>>(),
                     std::move(fns));
}

json to_json(const TransferredKernel& q) {
  json blocks = json::array();
  for (const auto& b : q.blocks) blocks.push_back(json::array({b.start, b.len}));
  return {{"dim", q.dim()},
          {"q", q.q.data()},
          {"blocks", std::move(blocks)},
          {"leakage", q.leakage},
          {"tol", q.tol}};
}

TransferredKernel transferred_from_json(const json& j) {
  TransferredKernel q;
  const int dim = j.at("dim").get<int>();
  q.q = Matrix(dim, dim);
  q.q.data() = j.at("q").get<std::vector<double>>();
  if (static_cast<int>(q.q.data().size()) != dim * dim)
    throw validation_error("matrix payload does not match dim");
  for (const auto& b : j.at("blocks"))
    q.blocks.push_back({b.at(0).get<int>(), b.at(1).get<int>()});
  q.leakage = j.at("leakage").get<double>();
  q.tol = j.at("tol").get<double>();
  return q;
}

json matrix_to_json(const Matrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", m.data()}};
}

Matrix matrix_from_json(const json& j) {
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  Matrix m(rows, cols);
  m.data() = j.at("entries").get<std::vector<double>>();
  if (static_cast<int>(m.data().size()) != rows * cols)
    throw validation_error("matrix payload does not match shape");
  return m;
}

json to_json(const CountLaw& law) {
  json out = {{"caps", law.caps},
              {"pmf", law.pmf},
              {"provenance",
               law.provenance == CountLaw::Provenance::Exact ? "exact"
                                                             : "empirical"}};
  if (!law.labels.empty()) out["labels"] = law.labels;
  if (law.provenance == CountLaw::Provenance::Empirical)
    out["n_samples"] = law.n_samples;
  else
    out["imag_residue"] = law.imag_residue;
  return out;
}

std::string law_to_csv(const CountLaw& law) {
  std::ostringstream os;
  os.precision(17);
  for (int i = 0; i < law.arity(); ++i) {
    os << (law.labels.empty() ? "count" + std::to_string(i) : law.labels[i])
       << ",";
  }
  os << "probability\n";
  for (std::size_t flat = 0; flat < law.pmf.size(); ++flat) {
    const auto counts = law.counts_at(flat);
    for (int c : counts) os << c << ",";
    os << law.pmf[flat] << "\n";
  }
  return os.str();
}

std::string canonical_dump(const json& j) {
  // nlohmann objects iterate in sorted key order already
  return j.dump();
}

namespace {

// FIPS 180-4, straightforward single-block loop
struct Sha256 {
  std::array<std::uint32_t, 8> h{0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                 0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  static constexpr std::array<std::uint32_t, 64> k{
      0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
      0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
      0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
      0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
      0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
      0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
      0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
      0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
      0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
      0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
      0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

  static std::uint32_t rotr(std::uint32_t x, int s) {
    return (x >> s) | (x << (32 - s));
  }

  void block(const unsigned char* p) {
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i)
      w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
             (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
      const std::uint32_t s0 =
          rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const std::uint32_t s1 =
          rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    auto a = h;
    for (int i = 0; i < 64; ++i) {
      const std::uint32_t s1 = rotr(a[4], 6) ^ rotr(a[4], 11) ^ rotr(a[4], 25);
      const std::uint32_t ch = (a[4] & a[5]) ^ (~a[4] & a[6]);
      const std::uint32_t t1 = a[7] + s1 + ch + k[i] + w[i];
      const std::uint32_t s0 = rotr(a[0], 2) ^ rotr(a[0], 13) ^ rotr(a[0], 22);
      const std::uint32_t maj = (a[0] & a[1]) ^ (a[0] & a[2]) ^ (a[1] & a[2]);
      const std::uint32_t t2 = s0 + maj;
      a[7] = a[6];
      a[6] = a[5];
      a[5] = a[4];
      a[4] = a[3] + t1;
      a[3] = a[2];
      a[2] = a[1];
      a[1] = a[0];
      a[0] = t1 + t2;
    }
    for (int i = 0; i < 8; ++i) h[i] += a[i];
  }
};

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  Sha256 state;
  const std::uint64_t bit_len = std::uint64_t(bytes.size()) * 8;

  std::string padded = bytes;
  padded.push_back(static_cast<char>(0x80));
  while (padded.size() % 64 != 56) padded.push_back('\0');
  for (int i = 7; i >= 0; --i)
    padded.push_back(static_cast<char>((bit_len >> (8 * i)) & 0xff));

  for (std::size_t off = 0; off < padded.size(); off += 64)
    state.block(reinterpret_cast<const unsigned char*>(padded.data()) + off);

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (std::uint32_t v : state.h)
    for (int i = 7; i >= 0; --i) out.push_back(hex[(v >> (4 * i)) & 0xf]);
  return out;
}

}  // namespace dppt
