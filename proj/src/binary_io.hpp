#pragma once

// Shared layout of the binary caches: 8-byte magic, little-endian u64 header
// words, raw payload, trailing CRC32 of everything before it.

#include <zlib.h>

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <vector>

#include "pclab/error.hpp"

namespace pclab::detail {

static_assert(std::endian::native == std::endian::little,
              "cache payloads are written as raw little-endian arrays");

inline void write_blob(const std::filesystem::path& path, const char (&magic)[8],
                       std::span<const std::uint64_t> header,
                       std::span<const std::byte> payload) {
  std::vector<std::byte> buf;
  buf.reserve(8 + header.size() * 8 + payload.size() + 4);
  auto put = [&](const void* p, std::size_t n) {
    const auto* b = static_cast<const std::byte*>(p);
    buf.insert(buf.end(), b, b + n);
  };
  put(magic, 8);
  for (std::uint64_t h : header) put(&h, 8);
  put(payload.data(), payload.size());
  const auto crc = static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(buf.size())));
  put(&crc, 4);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) fail(ErrorKind::io, "write failed: " + path.string());
}

inline void read_blob(const std::filesystem::path& path, const char (&magic)[8],
                      std::size_t header_words, std::vector<std::uint64_t>& header,
                      std::vector<std::byte>& payload) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open: " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::size_t fixed = 8 + header_words * 8;
  if (raw.size() < fixed + 4) fail(ErrorKind::validation, "cache truncated: " + path.string());
  if (std::memcmp(raw.data(), magic, 8) != 0) {
    fail(ErrorKind::wrong_file, "bad cache magic: " + path.string());
  }
  std::uint32_t stored = 0;
  std::memcpy(&stored, raw.data() + raw.size() - 4, 4);
  const auto crc = static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(raw.data()), static_cast<uInt>(raw.size() - 4)));
  if (crc != stored) fail(ErrorKind::validation, "cache checksum mismatch: " + path.string());
  header.resize(header_words);
  std::memcpy(header.data(), raw.data() + 8, header_words * 8);
  payload.resize(raw.size() - fixed - 4);
  std::memcpy(payload.data(), raw.data() + fixed, payload.size());
}

}  // namespace pclab::detail
