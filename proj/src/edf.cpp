#include "seizembed/edf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace seizembed {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_num(std::string_view field, const std::string& what) {
  const std::string t = trim(field);
  if (t.empty()) throw std::runtime_error("edf: empty numeric header field (" + what + ")");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size())
    throw std::runtime_error("edf: non-numeric header field (" + what + "): '" + t + "'");
  return v;
}

long parse_int(std::string_view field, const std::string& what) {
  const double v = parse_num(field, what);
  if (v != std::floor(v)) throw std::runtime_error("edf: expected integer header field (" + what + ")");
  return static_cast<long>(v);
}

std::string_view slice(std::string_view bytes, std::size_t off, std::size_t len) {
  if (off + len > bytes.size()) throw std::runtime_error("edf: truncated file (header)");
  return bytes.substr(off, len);
}

bool dummy_label(const std::string& label) {
  return label.empty() || label == "-" || label == ".";
}

void put_field(std::string& header, std::size_t off, std::size_t len, const std::string& value) {
  std::string v = value;
  if (v.size() > len) v.resize(len);
  v.resize(len, ' ');
  std::memcpy(header.data() + off, v.data(), len);
}

}  // namespace

EegRecording read_edf(std::string_view bytes, const std::string& fallback_id,
                      std::vector<std::string>* warnings) {
  if (bytes.size() < 256) throw std::runtime_error("edf: truncated file (main header)");

  const std::string recording_field = trim(slice(bytes, 88, 80));
  const long n_records = parse_int(slice(bytes, 236, 8), "number of data records");
  const double record_duration_s = parse_num(slice(bytes, 244, 8), "record duration");
  const long ns = parse_int(slice(bytes, 252, 4), "number of signals");

  if (n_records <= 0) throw std::runtime_error("edf: zero data records");
  if (record_duration_s <= 0.0) throw std::runtime_error("edf: non-positive record duration");
  if (ns <= 0) throw std::runtime_error("edf: no signals");

  const std::size_t sig_hdr = 256 + static_cast<std::size_t>(ns) * 256;
  if (bytes.size() < sig_hdr) throw std::runtime_error("edf: truncated file (signal headers)");

  const auto nsu = static_cast<std::size_t>(ns);
  auto field = [&](std::size_t base, std::size_t width, std::size_t i) {
    return slice(bytes, 256 + base * nsu + i * width, width);
  };

  std::vector<std::string> labels(nsu);
  std::vector<double> pmin(nsu), pmax(nsu), dmin(nsu), dmax(nsu);
  std::vector<long> spr(nsu);
  for (std::size_t i = 0; i < nsu; ++i) {
    labels[i] = trim(field(0, 16, i));
    pmin[i] = parse_num(field(16 + 80 + 8, 8, i), "physical min");
    pmax[i] = parse_num(field(16 + 80 + 8 + 8, 8, i), "physical max");
    dmin[i] = parse_num(field(16 + 80 + 8 + 16, 8, i), "digital min");
    dmax[i] = parse_num(field(16 + 80 + 8 + 24, 8, i), "digital max");
    spr[i] = parse_int(field(16 + 80 + 8 + 32 + 80, 8, i), "samples per record");
    if (dmin[i] == dmax[i]) throw std::runtime_error("edf: digital_min == digital_max for '" + labels[i] + "'");
    if (spr[i] <= 0) throw std::runtime_error("edf: non-positive samples per record");
    if (spr[i] != spr[0])
      throw std::runtime_error("edf: channels with unequal sampling rates are not supported");
  }

  const std::size_t rec_bytes = 2 * static_cast<std::size_t>(spr[0]) * nsu;
  if (bytes.size() < sig_hdr + rec_bytes * static_cast<std::size_t>(n_records))
    throw std::runtime_error("edf: truncated file (data records)");

  // keep first occurrence of each informative label
  std::vector<std::size_t> keep;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < nsu; ++i) {
    if (dummy_label(labels[i])) {
      if (warnings) warnings->push_back("dropped dummy channel #" + std::to_string(i));
      continue;
    }
    if (!seen.insert(labels[i]).second) {
      if (warnings) warnings->push_back("dropped duplicate channel '" + labels[i] + "'");
      continue;
    }
    keep.push_back(i);
  }
  if (keep.empty()) throw std::runtime_error("edf: no usable channels");

  EegRecording rec;
  rec.record_id = recording_field.empty() ? fallback_id : recording_field;
  rec.sample_rate_hz = static_cast<double>(spr[0]) / record_duration_s;
  const auto total = static_cast<Eigen::Index>(spr[0] * n_records);
  rec.samples.resize(static_cast<Eigen::Index>(keep.size()), total);
  rec.channel_names.reserve(keep.size());
  for (std::size_t i : keep) rec.channel_names.push_back(labels[i]);

  std::vector<double> gain(nsu), offset(nsu);
  for (std::size_t i = 0; i < nsu; ++i) {
    gain[i] = (pmax[i] - pmin[i]) / (dmax[i] - dmin[i]);
    offset[i] = pmin[i] - dmin[i] * gain[i];
  }

  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data()) + sig_hdr;
  const long per = spr[0];
  for (long r = 0; r < n_records; ++r) {
    for (std::size_t out = 0; out < keep.size(); ++out) {
      const std::size_t sig = keep[out];
      const unsigned char* p = data + rec_bytes * static_cast<std::size_t>(r) +
                               2 * static_cast<std::size_t>(per) * sig;
      auto row = rec.samples.row(static_cast<Eigen::Index>(out));
      for (long s = 0; s < per; ++s) {
        const auto raw = static_cast<std::int16_t>(
            static_cast<std::uint16_t>(p[2 * s]) | (static_cast<std::uint16_t>(p[2 * s + 1]) << 8));
        row(r * per + s) = raw * gain[sig] + offset[sig];
      }
    }
  }
  rec.validate();
  return rec;
}

EegRecording read_edf_file(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("edf: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string bytes = ss.str();
  std::string stem = path;
  if (auto pos = stem.find_last_of('/'); pos != std::string::npos) stem = stem.substr(pos + 1);
  if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".edf") stem.resize(stem.size() - 4);
  return read_edf(bytes, stem, warnings);
}

std::vector<std::uint8_t> write_edf(const EegRecording& rec) {
  rec.validate();
  const long fs = std::lround(rec.sample_rate_hz);
  if (std::abs(rec.sample_rate_hz - static_cast<double>(fs)) > 1e-9 || fs <= 0)
    throw std::invalid_argument("edf writer: integer sampling rate required");
  if (rec.samples.cols() % fs != 0)
    throw std::invalid_argument("edf writer: whole number of 1 s records required");
  const long n_records = rec.samples.cols() / fs;
  const auto nch = rec.n_channels();

  long phys = static_cast<long>(std::ceil(rec.samples.cwiseAbs().maxCoeff()));
  phys = std::max(phys, 1L);
  if (phys > 9999999L) throw std::invalid_argument("edf writer: amplitude too large for header field");
  const double dmin = -32768.0, dmax = 32767.0;
  const double gain = (2.0 * static_cast<double>(phys)) / (dmax - dmin);

  std::string header(256 + 256 * nch, ' ');
  put_field(header, 0, 8, "0");
  put_field(header, 8, 80, "X");
  put_field(header, 88, 80, rec.record_id);
  put_field(header, 168, 8, "01.01.00");
  put_field(header, 176, 8, "00.00.00");
  put_field(header, 184, 8, std::to_string(256 + 256 * nch));
  put_field(header, 236, 8, std::to_string(n_records));
  put_field(header, 244, 8, "1");
  put_field(header, 252, 4, std::to_string(nch));

  auto sig_field = [&](std::size_t base, std::size_t width, std::size_t i, const std::string& v) {
    put_field(header, 256 + base * nch + i * width, width, v);
  };
  for (std::size_t i = 0; i < nch; ++i) {
    sig_field(0, 16, i, rec.channel_names[i]);
    sig_field(16, 80, i, "synthetic");
    sig_field(96, 8, i, "uV");
    sig_field(104, 8, i, std::to_string(-phys));
    sig_field(112, 8, i, std::to_string(phys));
    sig_field(120, 8, i, "-32768");
    sig_field(128, 8, i, "32767");
    sig_field(136, 80, i, "");
    sig_field(216, 8, i, std::to_string(fs));
    sig_field(224, 32, i, "");
  }

  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + static_cast<std::size_t>(n_records) * nch * static_cast<std::size_t>(fs) * 2);
  for (long r = 0; r < n_records; ++r) {
    for (std::size_t ch = 0; ch < nch; ++ch) {
      for (long s = 0; s < fs; ++s) {
        const double v = rec.samples(static_cast<Eigen::Index>(ch), r * fs + s);
        double d = std::round((v + static_cast<double>(phys)) / gain + dmin);
        d = std::min(std::max(d, dmin), dmax);
        const auto raw = static_cast<std::int16_t>(d);
        out.push_back(static_cast<std::uint8_t>(raw & 0xff));
        out.push_back(static_cast<std::uint8_t>((raw >> 8) & 0xff));
      }
    }
  }
  return out;
}

void write_edf_file(const EegRecording& rec, const std::string& path) {
  const auto bytes = write_edf(rec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("edf: cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("edf: short write to " + path);
}

namespace {

double parse_seconds(const std::string& line, const std::string& what) {
  const auto colon = line.find(':');
  if (colon == std::string::npos) throw std::runtime_error("summary: malformed line '" + line + "'");
  std::string rest = trim(line.substr(colon + 1));
  if (auto pos = rest.find("second"); pos != std::string::npos) rest = trim(rest.substr(0, pos));
  if (rest.empty()) throw std::runtime_error("summary: missing number (" + what + ")");
  char* end = nullptr;
  const double v = std::strtod(rest.c_str(), &end);
  if (end != rest.c_str() + rest.size())
    throw std::runtime_error("summary: unparseable number '" + rest + "' (" + what + ")");
  return v;
}

}  // namespace

std::vector<SeizureAnnotation> read_chb_summary(std::string_view text) {
  std::vector<SeizureAnnotation> out;

  struct Block {
    std::string record_id;
    long declared = -1;
    std::vector<double> starts, ends;
  };
  Block cur;
  bool open = false;

  auto flush = [&]() {
    if (!open) return;
    if (cur.declared < 0)
      throw std::runtime_error("summary: block for '" + cur.record_id + "' lacks a seizure count");
    if (static_cast<long>(cur.starts.size()) != cur.declared ||
        static_cast<long>(cur.ends.size()) != cur.declared)
      throw std::runtime_error("summary: seizure count mismatch for '" + cur.record_id + "'");
    SeizureAnnotation ann;
    ann.record_id = cur.record_id;
    for (std::size_t i = 0; i < cur.starts.size(); ++i) {
      if (cur.ends[i] <= cur.starts[i])
        throw std::runtime_error("summary: seizure end <= start in '" + cur.record_id + "'");
      ann.intervals.emplace_back(cur.starts[i], cur.ends[i]);
    }
    std::sort(ann.intervals.begin(), ann.intervals.end());
    ann.validate();
    out.push_back(std::move(ann));
    cur = Block{};
    open = false;
  };

  std::string line;
  std::istringstream in{std::string(text)};
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.rfind("File Name:", 0) == 0) {
      flush();
      open = true;
      cur.record_id = trim(t.substr(10));
      if (cur.record_id.size() > 4 && cur.record_id.substr(cur.record_id.size() - 4) == ".edf")
        cur.record_id.resize(cur.record_id.size() - 4);
    } else if (t.rfind("Number of Seizures in File:", 0) == 0) {
      if (!open) throw std::runtime_error("summary: seizure count outside a file block");
      cur.declared = std::lround(parse_seconds(t, "seizure count"));
    } else if (t.rfind("Seizure", 0) == 0 && t.find("Start Time:") != std::string::npos) {
      if (!open) throw std::runtime_error("summary: seizure time outside a file block");
      cur.starts.push_back(parse_seconds(t, "seizure start"));
    } else if (t.rfind("Seizure", 0) == 0 && t.find("End Time:") != std::string::npos) {
      if (!open) throw std::runtime_error("summary: seizure time outside a file block");
      cur.ends.push_back(parse_seconds(t, "seizure end"));
    }
  }
  flush();
  return out;
}

std::vector<SeizureAnnotation> read_chb_summary_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("summary: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_chb_summary(ss.str());
}

}  // namespace seizembed
