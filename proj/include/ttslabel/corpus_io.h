// include/ttslabel/corpus_io.h

// Copyright 2026  ttslabel authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef TTSLABEL_CORPUS_IO_H_
#define TTSLABEL_CORPUS_IO_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ttslabel/label.h"
#include "ttslabel/synth.h"

namespace ttslabel {

// <dir>/metadata.jsonl, one object per utterance in corpus order, and
// <dir>/feats/<id>.bin.
void WriteCorpus(const std::filesystem::path &dir, const std::vector<LabeledUtterance> &corpus);
std::vector<LabeledUtterance> ReadCorpus(const std::filesystem::path &dir,
                                         const MoraInventory &inventory);

// "id<TAB>label string" per line.
using LabelTable = std::vector<std::pair<std::string, TtsLabelSequence>>;
void WriteLabelTable(const std::filesystem::path &path, const LabelTable &table);
LabelTable ReadLabelTable(const std::filesystem::path &path, const MoraInventory &inventory);

// One sentence per line, words separated by spaces.
void WriteTextPool(const std::filesystem::path &path,
                   const std::vector<std::vector<std::string>> &pool);
std::vector<std::vector<std::string>> ReadTextPool(const std::filesystem::path &path);

std::string ReadFile(const std::filesystem::path &path);
void WriteFile(const std::filesystem::path &path, const std::string &content);

}  // namespace ttslabel

#endif  // TTSLABEL_CORPUS_IO_H_
