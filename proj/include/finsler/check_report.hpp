#ifndef FINSLER_CHECK_REPORT_HPP
#define FINSLER_CHECK_REPORT_HPP

#include <string>

namespace finsler {

// The unit of verification output: one named property checked over some
// number of samples against a tolerance.
struct CheckReport {
  std::string name;
  int samples = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string worst_sample;  // human-readable note on the arg-max sample

  void record(double deviation, const std::string& note) {
    ++samples;
    if (samples == 1 || deviation > max_deviation) {
      max_deviation = deviation;
      worst_sample = note;
    }
    pass = max_deviation < tolerance;
  }
};

}  // namespace finsler

#endif  // FINSLER_CHECK_REPORT_HPP
