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

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "support/subtitle_fixtures.hpp"
#include "vlf/errors.hpp"
#include "vlf/kernel/rng.hpp"
#include "vlf/subtitle/cues.hpp"
#include "vlf/subtitle/segments.hpp"
#include "vlf/subtitle/timeline.hpp"

namespace vlf::subtitle {
namespace {

CueList cues_from(const std::vector<std::string>& texts) {
  CueList cues;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    cues.push_back({texts[i], {2.0 * i, 2.0 * i + 2.0}});
  }
  return cues;
}

std::vector<std::string> texts_of(const CueList& cues) {
  std::vector<std::string> out;
  for (const Cue& c : cues) out.push_back(c.text);
  return out;
}

TEST(ParseSrt, SingleBlock) {
  CueList cues = parse_subtitles("1\n00:00:01,000 --> 00:00:04,000\nhello world\n",
                                 SubtitleFormat::kSrt);
  ASSERT_EQ(cues.size(), 1u);
  EXPECT_EQ(cues[0].text, "hello world");
  EXPECT_EQ(cues[0].span, (TimeSpan{1.0, 4.0}));
}

TEST(ParseSrt, CrlfBomAndMarkup) {
  CueList cues = parse_subtitles(
      "\xEF\xBB\xBF" "1\r\n00:00:01,000 --> 00:00:02,500\r\n<i>Tom &amp; "
      "Jerry</i>\r\n{\\an8}run\r\n\r\n2\r\n00:00:03,000 --> 00:00:04,000\r\n<b></b>\r\n",
      SubtitleFormat::kSrt);
  ASSERT_EQ(cues.size(), 1u);
  EXPECT_EQ(cues[0].text, "Tom & Jerry run");
  EXPECT_EQ(cues[0].span, (TimeSpan{1.0, 2.5}));
}

TEST(ParseSrt, EndBeforeStartReportsLine) {
  try {
    parse_subtitles("1\n00:00:01,000 --> 00:00:02,000\na\n\n2\n00:00:05,000 --> "
                    "00:00:04,000\nb\n",
                    SubtitleFormat::kSrt);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 6u);
  }
}

TEST(ParseSrt, RejectsVttSeparator) {
  EXPECT_THROW(parse_subtitles("1\n00:00:01.000 --> 00:00:02.000\na\n", SubtitleFormat::kSrt),
               ParseError);
}

TEST(ParseVtt, TimestampArithmetic) {
  CueList cues = parse_subtitles(
      "WEBVTT\n\n00:01:00.500 --> 00:01:02.250\nsome text\n", SubtitleFormat::kWebVtt);
  ASSERT_EQ(cues.size(), 1u);
  EXPECT_DOUBLE_EQ(cues[0].span.start_s, 60.5);
  EXPECT_DOUBLE_EQ(cues[0].span.end_s, 62.25);
}

TEST(ParseVtt, OptionalHoursSettingsNotesAndIds) {
  CueList cues = parse_subtitles(
      "WEBVTT - title\nKind: captions\n\nNOTE a comment\nspanning\n\nintro\n"
      "01:02.000 --> 01:03.000 align:start position:0%\nfirst\n\n"
      "00:00:01.000 --> 00:00:02.000\nzero\n",
      SubtitleFormat::kWebVtt);
  ASSERT_EQ(cues.size(), 2u);
  EXPECT_EQ(cues[0].text, "zero");
  EXPECT_EQ(cues[1].span, (TimeSpan{62.0, 63.0}));
}

TEST(ParseVtt, MissingHeader) {
  EXPECT_THROW(parse_subtitles("00:00.000 --> 00:01.000\nx\n", SubtitleFormat::kWebVtt),
               ParseError);
}

TEST(FormatFromPath, Extensions) {
  EXPECT_EQ(format_from_path("a/b.SRT"), SubtitleFormat::kSrt);
  EXPECT_EQ(format_from_path("x.vtt"), SubtitleFormat::kWebVtt);
  EXPECT_THROW(format_from_path("x.txt"), InputError);
}

TEST(RoundTrip, RandomCuesAreBitExact) {
  kernel::Rng rng(17);
  for (SubtitleFormat format : {SubtitleFormat::kSrt, SubtitleFormat::kWebVtt}) {
    CueList cues;
    long long ms = 0;
    for (int i = 0; i < 50; ++i) {
      ms += static_cast<long long>(rng.below(5000));
      const long long end = ms + static_cast<long long>(rng.below(4000));
      cues.push_back({"cue " + std::to_string(i) + " text",
                      {static_cast<double>(ms) / 1000.0, static_cast<double>(end) / 1000.0}});
    }
    const std::string once = serialize_subtitles(cues, format);
    CueList parsed = parse_subtitles(once, format);
    EXPECT_EQ(parsed, cues);
    EXPECT_EQ(serialize_subtitles(parsed, format), once);
  }
}

TEST(RoundTrip, FixtureFilesAreBitExact) {
  for (const auto& fixture : testing::subtitle_fixtures()) {
    const auto path = testing::subtitle_fixture_path(fixture.name);
    const SubtitleFormat format = format_from_path(path);
    const CueList cues = load_subtitles(path);
    EXPECT_EQ(cues.size(), fixture.cues) << fixture.name;
    const std::string text = serialize_subtitles(cues, format);
    const CueList again = parse_subtitles(text, format);
    EXPECT_EQ(again, cues) << fixture.name;
    EXPECT_EQ(serialize_subtitles(again, format), text) << fixture.name;
  }
}

TEST(Fixtures, NormalizationAndTiming) {
  const CueList markup = load_subtitles(testing::subtitle_fixture_path("crlf_bom_markup.srt"));
  ASSERT_EQ(markup.size(), 3u);
  EXPECT_EQ(markup[0].text, "Hello and welcome!");
  EXPECT_EQ(markup[1].text, "Check your pulse & breathing before you start.");
  EXPECT_DOUBLE_EQ(markup[1].span.end_s, 6.125);

  const CueList late = load_subtitles(testing::subtitle_fixture_path("long_running.srt"));
  EXPECT_DOUBLE_EQ(late[1].span.end_s, 7203.01);
  EXPECT_DOUBLE_EQ(late[2].span.duration(), 0.0);

  const CueList notes = load_subtitles(testing::subtitle_fixture_path("notes_and_ids.vtt"));
  ASSERT_EQ(notes.size(), 3u);
  EXPECT_EQ(notes[1].text, "Rest it on the swollen ankle <gently>.");
  EXPECT_DOUBLE_EQ(notes[2].span.start_s, 3723.004);

  // Three-word repeats are trimmed; the one-word "so" repeat is kept.
  const CueList captions = load_subtitles(testing::subtitle_fixture_path("auto_captions.vtt"));
  EXPECT_EQ(texts_of(dedup_overlap(captions)),
            (std::vector<std::string>{"today I want to show you", "how to use an inhaler",
                                      "the right way so", "so first shake it well"}));
}

TEST(RoundTrip, ReservedCharactersSurvive) {
  const CueList cues = {{"a <b> & c --> d", {0, 1}}, {"{\\an8} stays", {1, 2}}, {"{plain}", {2, 3}}};
  for (SubtitleFormat format : {SubtitleFormat::kSrt, SubtitleFormat::kWebVtt}) {
    EXPECT_EQ(parse_subtitles(serialize_subtitles(cues, format), format), cues);
  }
}

TEST(FormatTimestamp, LongDurations) {
  EXPECT_EQ(format_timestamp(3723.004, ','), "01:02:03,004");
  EXPECT_EQ(format_timestamp(0.0, '.'), "00:00:00.000");
}

TEST(Dedup, TwoWordOverlapNeedsLowerThreshold) {
  const CueList cues = cues_from({"a b c", "b c d"});
  EXPECT_EQ(texts_of(dedup_overlap(cues, 2)), (std::vector<std::string>{"a b c", "d"}));
  EXPECT_EQ(texts_of(dedup_overlap(cues)), (std::vector<std::string>{"a b c", "b c d"}));
}

TEST(Dedup, ThreeWordOverlapRemoved) {
  const CueList cues = cues_from({"we mix the flour", "mix the flour and water"});
  EXPECT_EQ(texts_of(dedup_overlap(cues)),
            (std::vector<std::string>{"we mix the flour", "and water"}));
}

TEST(Dedup, CleanInputUnchanged) {
  const CueList cues = cues_from({"one two three", "four five six"});
  EXPECT_EQ(dedup_overlap(cues), cues);
}

TEST(Dedup, FullDuplicateCollapses) {
  EXPECT_EQ(texts_of(dedup_overlap(cues_from({"x y z", "x y z"}))),
            (std::vector<std::string>{"x y z"}));
}

TEST(Timeline, ProportionalSplit) {
  WordTimeline tl = build_word_timeline({{"ab cd", {0.0, 4.0}}});
  ASSERT_EQ(tl.words, (std::vector<std::string>{"ab", "cd"}));
  EXPECT_EQ(tl.spans[0], (TimeSpan{0.0, 2.0}));
  EXPECT_EQ(tl.spans[1], (TimeSpan{2.0, 4.0}));
}

TEST(Timeline, SingleWordTakesCueSpan) {
  WordTimeline tl = build_word_timeline({{"hello", {1.5, 2.75}}});
  EXPECT_EQ(tl.spans.at(0), (TimeSpan{1.5, 2.75}));
}

TEST(Timeline, CueIndexBookkeeping) {
  WordTimeline tl = build_word_timeline({{"a b", {0, 1}}, {"c d e", {1, 2}}});
  EXPECT_EQ(tl.cue_index, (std::vector<std::size_t>{0, 0, 1, 1, 1}));
  EXPECT_EQ(tl.cue_span_of(3), (TimeSpan{1, 2}));
  EXPECT_EQ(tl.envelope(), (TimeSpan{0, 2}));
}

TEST(Timeline, WordSpansTileEachCue) {
  kernel::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    CueList cues;
    double t = 0.0;
    for (int c = 0; c < 8; ++c) {
      std::string text;
      const std::size_t n = 1 + rng.below(9);
      for (std::size_t w = 0; w < n; ++w) {
        if (w) text += ' ';
        text += std::string(1 + rng.below(11), 'a' + static_cast<char>(w % 26));
      }
      const double start = t + rng.uniform(0.0, 1.0);
      const double end = start + rng.uniform(0.1, 7.0);
      cues.push_back({text, {start, end}});
      t = end;
    }
    WordTimeline tl = build_word_timeline(cues);
    std::vector<double> total(cues.size(), 0.0);
    for (std::size_t i = 0; i < tl.size(); ++i) {
      total[tl.cue_index[i]] += tl.spans[i].duration();
      if (i > 0 && tl.cue_index[i] == tl.cue_index[i - 1]) {
        EXPECT_EQ(tl.spans[i].start_s, tl.spans[i - 1].end_s);
      }
    }
    for (std::size_t c = 0; c < cues.size(); ++c) {
      EXPECT_NEAR(total[c], cues[c].span.duration(), 1e-9);
    }
    std::string rebuilt;
    std::vector<std::string> original;
    for (const Cue& c : cues) original.push_back(c.text);
    std::vector<std::string> joined(cues.size());
    for (std::size_t i = 0; i < tl.size(); ++i) {
      auto& s = joined[tl.cue_index[i]];
      if (!s.empty()) s += ' ';
      s += tl.words[i];
    }
    EXPECT_EQ(joined, original);
  }
}

TEST(Timeline, WordsInWindowUsesStrictOverlap) {
  WordTimeline tl = build_word_timeline({{"ab cd", {0.0, 4.0}}});
  EXPECT_EQ(words_in_window(tl, {2.0, 4.0}), (std::vector<std::size_t>{1}));
  EXPECT_EQ(words_in_window(tl, {1.0, 3.0}), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(words_in_window(tl, {2.0, 2.0}), (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(words_in_window(tl, {5.0, 6.0}).empty());
}

WordTimeline timeline_of(const std::string& text) {
  return build_word_timeline({{text, {0.0, 10.0}}});
}

TEST(Segment, BudgetOneSplitsEverySentence) {
  auto segs = topic_segment(timeline_of("a. b. c."), PunctuationSegmenter(1));
  ASSERT_EQ(segs.size(), 3u);
  EXPECT_EQ(segs[1].text, "b.");
}

TEST(Segment, UnpunctuatedBudgetArithmetic) {
  std::string text;
  for (int i = 0; i < 100; ++i) text += "w" + std::to_string(i) + " ";
  auto segs = topic_segment(timeline_of(text), PunctuationSegmenter(40));
  ASSERT_EQ(segs.size(), 3u);
  EXPECT_EQ(segs[0].word_count(), 40u);
  EXPECT_EQ(segs[1].word_count(), 40u);
  EXPECT_EQ(segs[2].word_count(), 20u);
}

TEST(Segment, SentencesMergeUpToBudget) {
  auto segs = topic_segment(timeline_of("a b. c d. e f g. h."), PunctuationSegmenter(4));
  std::vector<std::string> texts;
  for (const auto& s : segs) texts.push_back(s.text);
  EXPECT_EQ(texts, (std::vector<std::string>{"a b. c d.", "e f g. h."}));
}

TEST(Segment, EmptyTimelineRejected) {
  EXPECT_THROW(topic_segment(WordTimeline{}, PunctuationSegmenter()), InputError);
}

class FixedSegmenter : public TopicSegmenter {
 public:
  explicit FixedSegmenter(std::vector<std::size_t> b) : b_(std::move(b)) {}
  std::vector<std::size_t> boundaries(const WordTimeline&) const override { return b_; }

 private:
  std::vector<std::size_t> b_;
};

TEST(Segment, NonPartitionBoundariesRejected) {
  const WordTimeline tl = timeline_of("a b c d");
  EXPECT_THROW(topic_segment(tl, FixedSegmenter({1, 2})), IntegrityError);
  EXPECT_THROW(topic_segment(tl, FixedSegmenter({0, 2, 2})), IntegrityError);
  EXPECT_THROW(topic_segment(tl, FixedSegmenter({0, 4})), IntegrityError);
  EXPECT_EQ(topic_segment(tl, FixedSegmenter({0, 3})).size(), 2u);
}

TEST(Segment, PartitionAndIdempotentAlignment) {
  kernel::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    CueList cues;
    double t = 0.0;
    for (int c = 0; c < 10; ++c) {
      std::string text;
      const std::size_t n = 1 + rng.below(8);
      for (std::size_t w = 0; w < n; ++w) {
        text += (w ? " " : "") + std::string("w") + std::to_string(rng.below(50));
        if (rng.below(4) == 0) text += ".";
      }
      cues.push_back({text, {t, t + 1.0 + rng.uniform(0.0, 2.0)}});
      t = cues.back().span.end_s;
    }
    WordTimeline tl = build_word_timeline(cues);
    auto segs = topic_segment(tl, PunctuationSegmenter(1 + rng.below(12)));
    std::size_t next = 0;
    for (std::size_t k = 0; k < segs.size(); ++k) {
      EXPECT_EQ(segs[k].begin, next);
      EXPECT_GT(segs[k].end, segs[k].begin);
      next = segs[k].end;
      if (k > 0) EXPECT_LE(segs[k - 1].span.start_s, segs[k].span.start_s);
    }
    EXPECT_EQ(next, tl.size());
    EXPECT_EQ(align_timestamps(segs, tl), segs);
    EXPECT_EQ(segs.front().span.start_s, tl.envelope().start_s);
    EXPECT_EQ(segs.back().span.end_s, tl.envelope().end_s);
  }
}

TEST(Align, EnvelopeOfWordSpans) {
  WordTimeline tl = build_word_timeline({{"x", {0, 2}}, {"ab cdef", {2, 5}}});
  Segment s{1, 3, {}, "ab cdef"};
  auto out = align_timestamps({s}, tl);
  EXPECT_EQ(out[0].span, (TimeSpan{2, 5}));
}

TEST(Align, SharedBoundaryInsideOneCue) {
  WordTimeline tl = build_word_timeline({{"ab. cd", {0.0, 4.0}}});
  auto segs = topic_segment(tl, PunctuationSegmenter(1));
  ASSERT_EQ(segs.size(), 2u);
  // "ab." has 3 of 5 characters, so the boundary sits at 4 * 3 / 5.
  EXPECT_DOUBLE_EQ(segs[0].span.end_s, 2.4);
  EXPECT_EQ(segs[0].span.end_s, segs[1].span.start_s);
}

TEST(TimeSpan, MakeSpanValidates) {
  EXPECT_NO_THROW(make_span(0, 0));
  EXPECT_THROW(make_span(2, 1), InputError);
  EXPECT_THROW(make_span(-1, 1), InputError);
}

}  // namespace
}  // namespace vlf::subtitle
