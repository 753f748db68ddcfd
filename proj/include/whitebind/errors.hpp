#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace whitebind {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed word text (bad token, mixed grammars).
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at offset " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A generator index larger than the ambient rank.
class RankExceeded : public Error {
 public:
  RankExceeded(int generator, int rank)
      : Error("generator x" + std::to_string(generator) + " exceeds rank " + std::to_string(rank)),
        generator_(generator),
        rank_(rank) {}

  int generator() const noexcept { return generator_; }
  int rank() const noexcept { return rank_; }

 private:
  int generator_;
  int rank_;
};

/// Malformed serialized data (witness, certificate, batch record).
class FormatError : public Error {
 public:
  using Error::Error;
};

class RankMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyWord : public Error {
 public:
  explicit EmptyWord(const std::string& operation)
      : Error(operation + ": word must be non-empty") {}
};

/// State reached when a search hits a configured cap. Reported with the
/// error so callers can tell how far the computation got.
struct PartialState {
  std::string stage;
  std::size_t moves_applied = 0;
  std::size_t level_set_members = 0;
  std::size_t current_length = 0;
};

class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(PartialState state)
      : Error("resource limit reached during " + state.stage + " (moves applied: " +
              std::to_string(state.moves_applied) +
              ", level-set members: " + std::to_string(state.level_set_members) + ")"),
        state_(std::move(state)) {}

  const PartialState& state() const noexcept { return state_; }

 private:
  PartialState state_;
};

}  // namespace whitebind
