/* Copyright 2026 The VLF Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "vlf/subtitle/cues.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "vlf/errors.hpp"

namespace vlf::subtitle {

namespace {

struct Line {
  std::size_t number;  // 1-based
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view bytes) {
  if (bytes.starts_with("\xEF\xBB\xBF")) bytes.remove_prefix(3);
  std::vector<Line> lines;
  std::size_t number = 1;
  while (!bytes.empty()) {
    std::size_t nl = bytes.find('\n');
    std::string_view line = bytes.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({number++, line});
    if (nl == std::string_view::npos) break;
    bytes.remove_prefix(nl + 1);
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

std::optional<long> parse_uint(std::string_view s, std::size_t min_digits,
                               std::size_t max_digits) {
  if (s.size() < min_digits || s.size() > max_digits || !all_digits(s)) {
    return std::nullopt;
  }
  long v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

// Returns whole milliseconds, or nullopt if the text is not a timestamp.
std::optional<long long> parse_timestamp(std::string_view s, char millis_sep,
                                         bool hours_optional) {
  const std::size_t sep = s.rfind(millis_sep);
  if (sep == std::string_view::npos) return std::nullopt;
  auto ms = parse_uint(s.substr(sep + 1), 3, 3);
  std::string_view hms = s.substr(0, sep);
  std::vector<std::string_view> parts;
  while (true) {
    std::size_t colon = hms.find(':');
    parts.push_back(hms.substr(0, colon));
    if (colon == std::string_view::npos) break;
    hms.remove_prefix(colon + 1);
  }
  if (!ms) return std::nullopt;
  long hours = 0;
  std::size_t i = 0;
  if (parts.size() == 3) {
    auto h = parse_uint(parts[0], 1, 4);
    if (!h) return std::nullopt;
    hours = *h;
    i = 1;
  } else if (!(parts.size() == 2 && hours_optional)) {
    return std::nullopt;
  }
  auto m = parse_uint(parts[i], 2, 2);
  auto sec = parse_uint(parts[i + 1], 2, 2);
  if (!m || !sec || *m >= 60 || *sec >= 60) return std::nullopt;
  return ((hours * 60LL + *m) * 60LL + *sec) * 1000LL + *ms;
}

struct Timing {
  TimeSpan span;
};

Timing parse_timing_line(const Line& line, SubtitleFormat format) {
  const char sep = format == SubtitleFormat::kSrt ? ',' : '.';
  const bool hours_optional = format == SubtitleFormat::kWebVtt;
  std::string_view text = trim(line.text);
  const std::size_t arrow = text.find("-->");
  if (arrow == std::string_view::npos) {
    throw ParseError(line.number, "expected a timing line with '-->'");
  }
  std::string_view left = trim(text.substr(0, arrow));
  std::string_view right = trim(text.substr(arrow + 3));
  // WebVTT allows cue settings after the end time.
  if (std::size_t sp = right.find_first_of(" \t"); sp != std::string_view::npos) {
    if (format == SubtitleFormat::kSrt) {
      // SRT players ignore trailing coordinates such as "X1:..."; so do we.
    }
    right = right.substr(0, sp);
  }
  auto start = parse_timestamp(left, sep, hours_optional);
  auto end = parse_timestamp(right, sep, hours_optional);
  if (!start || !end) {
    throw ParseError(line.number, "malformed timestamp in '" + std::string(text) + "'");
  }
  if (*end < *start) {
    throw ParseError(line.number, "cue ends before it starts: '" + std::string(text) + "'");
  }
  return {{static_cast<double>(*start) / 1000.0, static_cast<double>(*end) / 1000.0}};
}

void decode_entities(std::string& s) {
  static const std::pair<std::string_view, std::string_view> kEntities[] = {
      {"&amp;", "&"}, {"&lt;", "<"},  {"&gt;", ">"},
      {"&quot;", "\""}, {"&#39;", "'"}, {"&apos;", "'"}, {"&nbsp;", " "}, {"&#123;", "{"}};
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    bool replaced = false;
    if (s[i] == '&') {
      for (const auto& [from, to] : kEntities) {
        if (std::string_view(s).substr(i, from.size()) == from) {
          out += to;
          i += from.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out += s[i++];
  }
  s = std::move(out);
}

// Inverse of decode_entities for the characters the parser would otherwise
// strip or misread: markup brackets, ampersands and override openers.
std::string escape_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    switch (s[i]) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '{':
        out += (i + 1 < s.size() && s[i + 1] == '\\') ? "&#123;" : "{";
        break;
      default: out += s[i];
    }
  }
  return out;
}

// Strips <tags> and {\override} blocks, decodes entities and collapses
// whitespace to single spaces.
std::string normalize_text(const std::vector<std::string_view>& lines) {
  std::string raw;
  for (std::string_view l : lines) {
    if (!raw.empty()) raw += ' ';
    raw += l;
  }
  std::string stripped;
  stripped.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c == '<') {
      std::size_t close = raw.find('>', i);
      if (close != std::string::npos) {
        i = close;
        continue;
      }
    } else if (c == '{' && i + 1 < raw.size() && raw[i + 1] == '\\') {
      std::size_t close = raw.find('}', i);
      if (close != std::string::npos) {
        i = close;
        continue;
      }
    }
    stripped += c;
  }
  decode_entities(stripped);
  std::string out;
  bool pending_space = false;
  for (char c : stripped) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out += ' ';
      pending_space = false;
      out += c;
    }
  }
  return out;
}

void add_cue(CueList& cues, const std::vector<std::string_view>& text_lines,
             const TimeSpan& span) {
  std::string text = normalize_text(text_lines);
  if (!text.empty()) cues.push_back({std::move(text), span});
}

CueList parse_srt(const std::vector<Line>& lines) {
  CueList cues;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (is_blank(lines[i].text)) {
      ++i;
      continue;
    }
    // Optional numeric index line.
    if (trim(lines[i].text).find("-->") == std::string_view::npos) {
      if (!all_digits(trim(lines[i].text))) {
        throw ParseError(lines[i].number, "expected a cue index or timing line");
      }
      ++i;
      if (i >= lines.size()) {
        throw ParseError(lines[i - 1].number, "cue index without timing line");
      }
    }
    Timing timing = parse_timing_line(lines[i], SubtitleFormat::kSrt);
    ++i;
    std::vector<std::string_view> text;
    while (i < lines.size() && !is_blank(lines[i].text)) text.push_back(lines[i++].text);
    add_cue(cues, text, timing.span);
  }
  return cues;
}

CueList parse_vtt(const std::vector<Line>& lines) {
  CueList cues;
  if (lines.empty()) return cues;
  if (!trim(lines[0].text).starts_with("WEBVTT")) {
    throw ParseError(lines[0].number, "missing WEBVTT header");
  }
  std::size_t i = 1;
  // Header block runs to the first blank line.
  while (i < lines.size() && !is_blank(lines[i].text)) ++i;
  while (i < lines.size()) {
    if (is_blank(lines[i].text)) {
      ++i;
      continue;
    }
    std::string_view first = trim(lines[i].text);
    if (first.starts_with("NOTE") || first.starts_with("STYLE") ||
        first.starts_with("REGION")) {
      while (i < lines.size() && !is_blank(lines[i].text)) ++i;
      continue;
    }
    if (first.find("-->") == std::string_view::npos) {
      ++i;  // cue identifier
      if (i >= lines.size() || is_blank(lines[i].text)) {
        throw ParseError(lines[i - 1].number, "cue identifier without timing line");
      }
    }
    Timing timing = parse_timing_line(lines[i], SubtitleFormat::kWebVtt);
    ++i;
    std::vector<std::string_view> text;
    while (i < lines.size() && !is_blank(lines[i].text)) text.push_back(lines[i++].text);
    add_cue(cues, text, timing.span);
  }
  return cues;
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

SubtitleFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".srt") return SubtitleFormat::kSrt;
  if (ext == ".vtt") return SubtitleFormat::kWebVtt;
  throw InputError("unrecognized subtitle extension '" + ext + "' for " + path.string());
}

CueList parse_subtitles(std::string_view bytes, SubtitleFormat format) {
  std::vector<Line> lines = split_lines(bytes);
  CueList cues = format == SubtitleFormat::kSrt ? parse_srt(lines) : parse_vtt(lines);
  std::stable_sort(cues.begin(), cues.end(), [](const Cue& a, const Cue& b) {
    return a.span.start_s < b.span.start_s;
  });
  return cues;
}

CueList load_subtitles(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open subtitle file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_subtitles(buf.str(), format_from_path(path));
}

std::string format_timestamp(double seconds, char millis_separator) {
  const long long total = std::llround(seconds * 1000.0);
  const long long ms = total % 1000;
  const long long s = (total / 1000) % 60;
  const long long m = (total / 60000) % 60;
  const long long h = total / 3600000;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%02lld:%02lld:%02lld%c%03lld", h, m, s,
                millis_separator, ms);
  return buf;
}

std::string serialize_subtitles(const CueList& cues, SubtitleFormat format) {
  std::string out;
  const char sep = format == SubtitleFormat::kSrt ? ',' : '.';
  if (format == SubtitleFormat::kWebVtt) out += "WEBVTT\n\n";
  for (std::size_t i = 0; i < cues.size(); ++i) {
    if (format == SubtitleFormat::kSrt) out += std::to_string(i + 1) + "\n";
    out += format_timestamp(cues[i].span.start_s, sep) + " --> " +
           format_timestamp(cues[i].span.end_s, sep) + "\n";
    out += escape_text(cues[i].text) + "\n\n";
  }
  return out;
}

CueList dedup_overlap(const CueList& cues, std::size_t min_overlap_words) {
  CueList out;
  std::vector<std::string_view> prev_words;
  for (const Cue& cue : cues) {
    std::vector<std::string_view> words = split_words(cue.text);
    std::size_t overlap = 0;
    if (!out.empty()) {
      const std::size_t limit = std::min(prev_words.size(), words.size());
      for (std::size_t len = limit; len >= std::max<std::size_t>(min_overlap_words, 1);
           --len) {
        if (std::equal(prev_words.end() - static_cast<std::ptrdiff_t>(len),
                       prev_words.end(), words.begin())) {
          overlap = len;
          break;
        }
      }
    }
    if (overlap == words.size() && overlap > 0) continue;
    Cue kept{"", cue.span};
    for (std::size_t i = overlap; i < words.size(); ++i) {
      if (i > overlap) kept.text += ' ';
      kept.text += words[i];
    }
    out.push_back(std::move(kept));
    prev_words = split_words(out.back().text);
  }
  return out;
}

}  // namespace vlf::subtitle
