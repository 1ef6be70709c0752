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

#ifndef LCM_ERRORS_HPP_
#define LCM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace lcm {

class LcmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base for every condition that the protocol's assert semantics map to
/// "the server misbehaved": the party that observes it halts permanently.
class ProtocolViolation : public LcmError {
 public:
  using LcmError::LcmError;
  virtual const char* kind() const { return "violation"; }
};

/// auth-decrypt failed: ciphertext tampered, truncated, or wrong key.
class AuthenticationFailure : public ProtocolViolation {
 public:
  using ProtocolViolation::ProtocolViolation;
  const char* kind() const override { return "authentication_failure"; }
};

/// A reply's echoed hash-chain value does not match the client's own:
/// the reply does not answer the outstanding invoke (replay, misroute,
/// or fork evidence).
class EchoMismatch : public ProtocolViolation {
 public:
  using ProtocolViolation::ProtocolViolation;
  const char* kind() const override { return "echo_mismatch"; }
};

/// The context's per-client record disagrees with the view a client sent:
/// rollback, fork, or replay evidence.
class ViewMismatch : public ProtocolViolation {
 public:
  using ProtocolViolation::ProtocolViolation;
  const char* kind() const override { return "view_mismatch"; }
};

/// A plaintext message or persisted structure failed to decode.
class MalformedMessage : public ProtocolViolation {
 public:
  using ProtocolViolation::ProtocolViolation;
  const char* kind() const override { return "malformed_message"; }
};

// Local usage errors; these indicate caller bugs, not server misbehavior.

class PendingOperation : public LcmError {
 public:
  using LcmError::LcmError;
};

class NoPendingOperation : public LcmError {
 public:
  using LcmError::LcmError;
};

class ClientHalted : public LcmError {
 public:
  using LcmError::LcmError;
};

class ContextHalted : public LcmError {
 public:
  using LcmError::LcmError;
};

class AlreadyBootstrapped : public LcmError {
 public:
  using LcmError::LcmError;
};

class NotBootstrapped : public LcmError {
 public:
  using LcmError::LcmError;
};

class TargetNotFresh : public LcmError {
 public:
  using LcmError::LcmError;
};

class UnknownClient : public LcmError {
 public:
  using LcmError::LcmError;
};

class DuplicateClient : public LcmError {
 public:
  using LcmError::LcmError;
};

class ConfigError : public LcmError {
 public:
  using LcmError::LcmError;
};

class MalformedTrace : public LcmError {
 public:
  using LcmError::LcmError;
};

}  // namespace lcm

#endif  // LCM_ERRORS_HPP_
