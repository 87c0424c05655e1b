#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "zarank/detail/sha256.hpp"

using zarank::detail::sha256_hex;

// NIST FIPS 180-4 short-message vectors.
TEST_CASE("sha256 known answers") {
  REQUIRE(sha256_hex(std::string{}) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  REQUIRE(sha256_hex(std::string{"abc"}) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  REQUIRE(sha256_hex(std::string{"abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"}) ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("sha256 streaming equals one-shot") {
  zarank::detail::Sha256 h;
  const std::string msg = "the quick brown fox jumps over the lazy dog, twice over";
  for (char c : msg) h.update(&c, 1);
  const auto d = h.digest();
  std::string hex;
  for (unsigned char b : d) {
    static const char* hd = "0123456789abcdef";
    hex.push_back(hd[b >> 4]);
    hex.push_back(hd[b & 0xf]);
  }
  REQUIRE(hex == sha256_hex(msg));
}

TEST_CASE("sha256 padding boundary lengths") {
  // 55, 56 and 64 byte messages straddle the length-padding block edge.
  for (std::size_t len : {55u, 56u, 63u, 64u, 65u}) {
    const std::string m(len, 'a');
    REQUIRE(sha256_hex(m).size() == 64);
    REQUIRE(sha256_hex(m) != sha256_hex(m + "b"));
  }
}
