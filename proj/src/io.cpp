#include "dhs/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <openssl/evp.h>

#include "json.hpp"

namespace dhs::io {

namespace {

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
}

std::string sample_bytes(const SpectralField& f) {
  std::string bytes(static_cast<std::size_t>(f.grid().n()) * 8, '\0');
  for (int i = 0; i < f.grid().n(); ++i) {
    const auto word = to_little_endian(std::bit_cast<std::uint64_t>(f.samples()[i]));
    std::memcpy(bytes.data() + 8 * i, &word, 8);
  }
  return bytes;
}

std::filesystem::path with_suffix(const std::filesystem::path& base, const char* suffix) {
  return std::filesystem::path(base.string() + suffix);
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_field(const std::filesystem::path& base, const SpectralField& f) {
  {
    std::ofstream out(with_suffix(base, ".bin"), std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + base.string() + ".bin");
    const std::string bytes = sample_bytes(f);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  nlohmann::json meta = {{"n", f.grid().n()}, {"length", f.grid().length()}};
  std::ofstream out(with_suffix(base, ".json"));
  if (!out) throw std::runtime_error("cannot write " + base.string() + ".json");
  out << std::setprecision(17) << meta.dump(2) << '\n';
}

SpectralField read_field(const std::filesystem::path& base) {
  const auto meta = nlohmann::json::parse(read_text(with_suffix(base, ".json")));
  const Grid grid(meta.at("n").get<int>(), meta.at("length").get<double>());
  const std::string bytes = read_text(with_suffix(base, ".bin"));
  if (bytes.size() != static_cast<std::size_t>(grid.n()) * 8)
    throw std::runtime_error("field binary " + base.string() + ".bin has the wrong size");
  RealVector s(grid.n());
  for (int i = 0; i < grid.n(); ++i) {
    std::uint64_t word;
    std::memcpy(&word, bytes.data() + 8 * i, 8);
    s[i] = std::bit_cast<double>(to_little_endian(word));
  }
  return SpectralField::from_samples(grid, std::move(s));
}

std::string format_real(double value) {
  std::ostringstream ss;
  ss << std::setprecision(17) << value;
  return ss.str();
}

void write_field_csv(const std::filesystem::path& path, const SpectralField& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "x,value\n";
  for (int i = 0; i < f.grid().n(); ++i)
    out << format_real(f.grid().positions()[i]) << ',' << format_real(f.samples()[i]) << '\n';
}

std::string git_blob_hash(std::string_view content) {
  const std::string header = "blob " + std::to_string(content.size()) + std::string(1, '\0');
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr);
  EVP_DigestUpdate(ctx, header.data(), header.size());
  EVP_DigestUpdate(ctx, content.data(), content.size());
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

std::string git_blob_hash_file(const std::filesystem::path& path) { return git_blob_hash(read_text(path)); }

std::string field_hash(const SpectralField& f) { return git_blob_hash(sample_bytes(f)); }

}  // namespace dhs::io
