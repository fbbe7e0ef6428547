/**
 * Built-in demo sentence set (placeholder texts, 10 words each) so the
 * console runs before any set file is loaded; real studies load their
 * own JSON files in the same format.
 */

import type { SentenceSet } from "./sentences.js";

export const DEFAULT_SET: SentenceSet = {
  setId: "en-01",
  language: "EN",
  sentences: [
    { id: "en-01-01", logmar: 1.0, text: "The boy ran down the hill to meet his friend", wordCount: 10 },
    { id: "en-01-02", logmar: 0.9, text: "My sister likes to read books in the quiet room", wordCount: 10 },
    { id: "en-01-03", logmar: 0.8, text: "The old dog slept on the porch all day long", wordCount: 10 },
    { id: "en-01-04", logmar: 0.7, text: "We walked to the store to buy bread and milk", wordCount: 10 },
    { id: "en-01-05", logmar: 0.6, text: "The children played in the park until it got dark", wordCount: 10 },
    { id: "en-01-06", logmar: 0.5, text: "Father put the heavy box on the kitchen table top", wordCount: 10 },
    { id: "en-01-07", logmar: 0.4, text: "A small bird sat on the fence near the gate", wordCount: 10 },
    { id: "en-01-08", logmar: 0.3, text: "The teacher asked us to write our names very neatly", wordCount: 10 },
    { id: "en-01-09", logmar: 0.2, text: "Mother made a warm soup for dinner last cold night", wordCount: 10 },
    { id: "en-01-10", logmar: 0.1, text: "The two girls rode their bikes along the river path", wordCount: 10 },
    { id: "en-01-11", logmar: 0.0, text: "He found a shiny coin under the old wooden bench", wordCount: 10 },
    { id: "en-01-12", logmar: -0.1, text: "The farmer fed the horses before the sun came up", wordCount: 10 },
    { id: "en-01-13", logmar: -0.2, text: "She hung the wet clothes on the line to dry", wordCount: 10 },
    { id: "en-01-14", logmar: -0.3, text: "The train left the station before we reached the platform", wordCount: 10 },
    { id: "en-01-15", logmar: -0.4, text: "Our cat likes to sleep in the sunny window corner", wordCount: 10 },
    { id: "en-01-16", logmar: -0.5, text: "The man fixed the broken wheel with a small tool", wordCount: 10 },
  ],
};
