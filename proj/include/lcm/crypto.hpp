/*
 * Copyright (c) 2026, the LCM project authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LCM_CRYPTO_HPP_
#define LCM_CRYPTO_HPP_

#include <array>
#include <cstdint>
#include <string>

#include "lcm/bytes.hpp"

namespace lcm {

inline constexpr std::size_t kSymKeyLen = 16;
inline constexpr std::size_t kNonceLen = 12;
inline constexpr std::size_t kTagLen = 16;
inline constexpr std::size_t kDigestLen = 32;

/// Fixed byte overhead an Envelope adds over its plaintext.
inline constexpr std::size_t kEnvelopeOverhead = kNonceLen + kTagLen;

/// 128-bit symmetric key. Holds k_C (communication), k_P (protocol state)
/// or k_S (sealing), depending on use.
struct SymKey {
  std::array<std::uint8_t, kSymKeyLen> bytes{};

  static SymKey random();
  bool operator==(const SymKey&) const = default;
};

/// SHA-256 output; also the hash-chain element type.
struct Digest {
  std::array<std::uint8_t, kDigestLen> value{};

  std::string hex() const;
  static Digest from_hex(std::string_view s);
  bool operator==(const Digest&) const = default;
};

/// h_0: both the client's initial chain value and the context's initial
/// chain head are this all-zero digest.
inline constexpr Digest kDigestZero{};

/// Authenticated-encrypted blob. Wire/storage layout is bit-exact:
/// nonce (12 bytes) || ciphertext || tag (16 bytes).
struct Envelope {
  std::array<std::uint8_t, kNonceLen> nonce{};
  Bytes ciphertext;
  std::array<std::uint8_t, kTagLen> tag{};

  Bytes to_bytes() const;
  static Envelope from_bytes(ByteSpan b);  // throws MalformedMessage
  std::size_t wire_size() const { return kEnvelopeOverhead + ciphertext.size(); }
  bool operator==(const Envelope&) const = default;
};

/// Software stand-in for a TEE's hardware key infrastructure: an opaque
/// platform id plus a per-platform root secret.
struct PlatformIdentity {
  std::string platform_id;
  std::array<std::uint8_t, kDigestLen> platform_secret{};

  static PlatformIdentity random(std::string id);
};

/// AES-128-GCM with a fresh random 96-bit nonce.
Envelope auth_encrypt(ByteSpan plaintext, const SymKey& key);

/// Inverse of auth_encrypt. Throws AuthenticationFailure on any tampering
/// or key mismatch; per the protocol this is equivalent to an assert false.
Bytes auth_decrypt(const Envelope& envelope, const SymKey& key);

/// Extends the operation hash chain. The input is canonically framed as
///   prev (32) || len(op) as u32 || op || t as u64 || client_id as u32
/// so that no two distinct (prev, op, t, i) tuples share an encoding.
/// Requires t >= 1 and client_id >= 1.
Digest chain_hash(const Digest& prev, ByteSpan op_bytes, std::uint64_t t,
                  std::uint32_t client_id);

/// Deterministic per-platform, per-program key derivation; emulates the
/// TEE get-key primitive. HKDF-SHA256 with the platform secret as input
/// keying material and the program id as the info string.
SymKey get_key(const PlatformIdentity& platform, ByteSpan program_id);

/// One-shot SHA-256, exposed for tests and the trace format.
Digest sha256(ByteSpan data);

/// Cryptographically secure random bytes; failure is fatal.
void random_bytes(std::uint8_t* out, std::size_t n);

}  // namespace lcm

#endif  // LCM_CRYPTO_HPP_
