#include "crackctl/hashing.hpp"

#include <array>
#include <fstream>
#include <iterator>

#include <openssl/evp.h>

#include "thermocrack/error.hpp"

namespace crackctl {

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw thermocrack::InvariantError("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 15]);
  }
  return hex;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw thermocrack::IoError(path, "cannot open for hashing");
  const std::string bytes((std::istreambuf_iterator<char>(in)), {});
  return sha256_hex(bytes);
}

}  // namespace crackctl
