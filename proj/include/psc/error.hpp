#pragma once

#include <stdexcept>
#include <string>

namespace psc {

enum class ErrorCode {
  NonPlanarEmbedding,
  BadDegree,
  AngleTie,
  LinkAbsent,
  CornersPaired,
  NotAdjacent,
  NoSharedPlaquette,
  NotUnpaired,
  InvalidPath,
  NotALoop,
  OddOpenPath,
  NonSimpleLoop,
  SegmentNotOnFace,
  SlotMissing,
  EndpointMismatch,
  NonHermitianAxis,
  NonHermitianObservable,
  NonCommuting,
  RankDeficient,
  Inconsistent,
  TooManyQubits,
  UnsupportedGeometry,
  ValidationFailed,
};

const char* code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail)
      : std::runtime_error(std::string(code_name(code)) + ": " + detail),
        code_(code),
        detail_(std::move(detail)) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, std::string detail) {
  throw Error(code, std::move(detail));
}

inline void require(bool ok, ErrorCode code, const std::string& detail) {
  if (!ok) fail(code, detail);
}

}  // namespace psc
