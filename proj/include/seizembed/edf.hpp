#pragma once

// Strict EDF reader/writer (16-bit little-endian samples, ASCII headers)
// and the CHB-MIT "-summary.txt" annotation parser. EDF+ extensions are
// out of scope; all signals must share one sampling rate.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "seizembed/signal.hpp"

namespace seizembed {

// Parse an EDF byte stream. Samples are mapped to physical units through the
// per-signal (digital_min, digital_max) -> (physical_min, physical_max) line.
// record_id comes from the header's recording field, or fallback_id when that
// field is blank. Channels labeled "-" (or "." / empty) and repeated labels
// are dropped; a note per dropped channel is appended to *warnings when given.
EegRecording read_edf(std::string_view bytes, const std::string& fallback_id = "",
                      std::vector<std::string>* warnings = nullptr);

EegRecording read_edf_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

// Minimal EDF writer for synthetic data: 1-second data records, symmetric
// integer physical range sized to the data, digital range [-32768, 32767].
// Requires an integer sampling rate and a whole number of seconds.
std::vector<std::uint8_t> write_edf(const EegRecording& rec);

void write_edf_file(const EegRecording& rec, const std::string& path);

// Parse a CHB-MIT summary text into one annotation per "File Name:" block.
std::vector<SeizureAnnotation> read_chb_summary(std::string_view text);

std::vector<SeizureAnnotation> read_chb_summary_file(const std::string& path);

}  // namespace seizembed
