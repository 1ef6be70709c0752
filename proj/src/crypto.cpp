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

#include "lcm/crypto.hpp"

#include <openssl/evp.h>
#include <openssl/kdf.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include <cassert>
#include <memory>

#include "lcm/errors.hpp"

namespace lcm {

namespace {

using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;

CipherCtx make_cipher_ctx() {
  CipherCtx ctx(EVP_CIPHER_CTX_new(), &EVP_CIPHER_CTX_free);
  if (!ctx) throw LcmError("EVP_CIPHER_CTX_new failed");
  return ctx;
}

[[noreturn]] void fatal(const char* what) {
  throw LcmError(std::string("openssl failure: ") + what);
}

}  // namespace

void random_bytes(std::uint8_t* out, std::size_t n) {
  if (RAND_bytes(out, static_cast<int>(n)) != 1) fatal("RAND_bytes");
}

SymKey SymKey::random() {
  SymKey k;
  random_bytes(k.bytes.data(), k.bytes.size());
  return k;
}

std::string Digest::hex() const {
  return hex_encode(value);
}

Digest Digest::from_hex(std::string_view s) {
  Bytes raw = hex_decode(s);
  if (raw.size() != kDigestLen) throw MalformedTrace("digest must be 32 bytes");
  Digest d;
  std::copy(raw.begin(), raw.end(), d.value.begin());
  return d;
}

PlatformIdentity PlatformIdentity::random(std::string id) {
  PlatformIdentity p;
  p.platform_id = std::move(id);
  random_bytes(p.platform_secret.data(), p.platform_secret.size());
  return p;
}

Bytes Envelope::to_bytes() const {
  Bytes out;
  out.reserve(wire_size());
  out.insert(out.end(), nonce.begin(), nonce.end());
  out.insert(out.end(), ciphertext.begin(), ciphertext.end());
  out.insert(out.end(), tag.begin(), tag.end());
  return out;
}

Envelope Envelope::from_bytes(ByteSpan b) {
  if (b.size() < kEnvelopeOverhead) throw MalformedMessage("envelope too short");
  Envelope e;
  std::copy(b.begin(), b.begin() + kNonceLen, e.nonce.begin());
  e.ciphertext.assign(b.begin() + kNonceLen, b.end() - kTagLen);
  std::copy(b.end() - kTagLen, b.end(), e.tag.begin());
  return e;
}

Envelope auth_encrypt(ByteSpan plaintext, const SymKey& key) {
  Envelope env;
  random_bytes(env.nonce.data(), env.nonce.size());
  env.ciphertext.resize(plaintext.size());

  CipherCtx ctx = make_cipher_ctx();
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_gcm(), nullptr,
                         key.bytes.data(), env.nonce.data()) != 1) {
    fatal("EncryptInit");
  }
  int len = 0;
  if (!plaintext.empty()) {
    if (EVP_EncryptUpdate(ctx.get(), env.ciphertext.data(), &len,
                          plaintext.data(),
                          static_cast<int>(plaintext.size())) != 1) {
      fatal("EncryptUpdate");
    }
  }
  int fin = 0;
  if (EVP_EncryptFinal_ex(ctx.get(), env.ciphertext.data() + len, &fin) != 1) {
    fatal("EncryptFinal");
  }
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG,
                          static_cast<int>(env.tag.size()),
                          env.tag.data()) != 1) {
    fatal("GET_TAG");
  }
  return env;
}

Bytes auth_decrypt(const Envelope& envelope, const SymKey& key) {
  Bytes plaintext(envelope.ciphertext.size());

  CipherCtx ctx = make_cipher_ctx();
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_128_gcm(), nullptr,
                         key.bytes.data(), envelope.nonce.data()) != 1) {
    fatal("DecryptInit");
  }
  int len = 0;
  if (!envelope.ciphertext.empty()) {
    if (EVP_DecryptUpdate(ctx.get(), plaintext.data(), &len,
                          envelope.ciphertext.data(),
                          static_cast<int>(envelope.ciphertext.size())) != 1) {
      throw AuthenticationFailure("auth-decrypt failed");
    }
  }
  // GCM requires the tag to be set before the final call that verifies it.
  std::array<std::uint8_t, kTagLen> tag = envelope.tag;
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG,
                          static_cast<int>(tag.size()), tag.data()) != 1) {
    fatal("SET_TAG");
  }
  int fin = 0;
  if (EVP_DecryptFinal_ex(ctx.get(), plaintext.data() + len, &fin) != 1) {
    throw AuthenticationFailure("auth-decrypt failed");
  }
  return plaintext;
}

Digest sha256(ByteSpan data) {
  Digest d;
  unsigned int out_len = 0;
  if (EVP_Digest(data.data(), data.size(), d.value.data(), &out_len,
                 EVP_sha256(), nullptr) != 1 ||
      out_len != kDigestLen) {
    fatal("EVP_Digest");
  }
  return d;
}

Digest chain_hash(const Digest& prev, ByteSpan op_bytes, std::uint64_t t,
                  std::uint32_t client_id) {
  assert(t >= 1 && client_id >= 1);
  ByteWriter w;
  w.raw(prev.value);
  w.var_bytes(op_bytes);
  w.u64(t);
  w.u32(client_id);
  return sha256(w.bytes());
}

SymKey get_key(const PlatformIdentity& platform, ByteSpan program_id) {
  static constexpr char kSalt[] = "lcm/get-key/v1";

  std::unique_ptr<EVP_PKEY_CTX, decltype(&EVP_PKEY_CTX_free)> ctx(
      EVP_PKEY_CTX_new_id(EVP_PKEY_HKDF, nullptr), &EVP_PKEY_CTX_free);
  if (!ctx) fatal("EVP_PKEY_CTX_new_id");
  if (EVP_PKEY_derive_init(ctx.get()) != 1) fatal("derive_init");
  if (EVP_PKEY_CTX_set_hkdf_md(ctx.get(), EVP_sha256()) != 1) fatal("hkdf_md");
  if (EVP_PKEY_CTX_set1_hkdf_salt(
          ctx.get(), reinterpret_cast<const unsigned char*>(kSalt),
          sizeof(kSalt) - 1) != 1) {
    fatal("hkdf_salt");
  }
  if (EVP_PKEY_CTX_set1_hkdf_key(ctx.get(), platform.platform_secret.data(),
                                 static_cast<int>(
                                     platform.platform_secret.size())) != 1) {
    fatal("hkdf_key");
  }
  if (!program_id.empty() &&
      EVP_PKEY_CTX_add1_hkdf_info(ctx.get(), program_id.data(),
                                  static_cast<int>(program_id.size())) != 1) {
    fatal("hkdf_info");
  }
  SymKey out;
  std::size_t out_len = out.bytes.size();
  if (EVP_PKEY_derive(ctx.get(), out.bytes.data(), &out_len) != 1 ||
      out_len != out.bytes.size()) {
    fatal("EVP_PKEY_derive");
  }
  return out;
}

}  // namespace lcm
