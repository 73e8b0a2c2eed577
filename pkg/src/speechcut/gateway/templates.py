"""Prompt templates for the language-model capabilities.

Templates are rendered into chat message lists (system + few-shot + user).
The candidate template's numbered guidelines are the behavioural contract
for shortened transcripts; scoring assumes candidates were asked to follow
them even though raw model output is unreliable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

CANDIDATE_SYSTEM = """You are a helpful writing assistant. Your task is to edit my transcript according to the following guidelines:
1. **No New Words**: Do not add any new words that are not already in the transcript, besides when merging sentences.
2. **Same Wording**: Do not change the original wording.
3. **Include Everything**: Ensure that no piece of information from the original transcript is left out.
4. **Remove Filler Words**: Eliminate all filler words like "um" and "uh."
5. **Preserve Style**: Keep the original language style intact; don't change the tone or formal/informal nature of the language.
6. **Remove Repetitions**: Delete any repeated information to avoid redundancies.
7. **Unique Words**: Keep unique/rare words as they may aid in memory when listening to the transcript
8. **No Hyphens or Word Corrections**: Do not combine words using hyphens or introduce hyphens and do not change a single character of a word to correct it if the word itself would be kept.
9. **Target Length**: Ensure the final output is not more than {target_length} words.

Your response will not be formatted and will only contain the shortened transcript."""

EDIT_TYPE_SYSTEM = """I will give you a sentence before and after an edit. Your task is to describe the edit that was made. Your response should not be formatted and only contain the type of the edit. Pick among the following types: ['Filler Word Removal', 'Repetition Removal', 'Clarification', 'Emphasis Removal', 'Information Removal'].

Here are definitions of the edit types:
**Filler Word Removal**: Removing unnecessary words or phrases that do not add meaning to the sentence, such as "um," "like," "you know," or "basically." These words are often used as verbal pauses and can be omitted without changing the overall content.

**Repetition Removal**: Removing repeated words, phrases, or ideas that add no new value to the content. This type of edit removes repeated words for clarity and conciseness.

**Clarification**: This type of edits make an unclear or ambiguous phrase more understandable by providing additional context or rephrasing the phrase.

**Emphasis Removal**: Removes words or phrases used to stress or exaggerate a point. These may include words like "really" and "very".

**Information Removal**: Removing details, facts, or sections of the content that are either irrelevant to the main information or not relevant in a different context."""

EDIT_TYPE_USER = """Before: {before}
After: {after}"""

IMPORTANCE_SYSTEM = """Rate from 1-10, how crucial are the following information points to the main text content based on the following purpose:

Purpose: {purpose}

For example, when an information is important contextually but not central to the main content of the text, it should be rated low.

Format your output as JSON with a list of ratings from 1-10 for each information bit.

Example output: {{"importances": [X, Y, ...]}} where X, Y, ... are numbers between 1 and 10 for each respective information bit in the order I gave them to you."""

IMPORTANCE_USER = """Information Points: {information_points}
Text: {text}"""

INFORMATION_SYSTEM = """Extract a list of all atomic information bits that occur in a text I will give to you. An information bit is an atomic essiential piece of information that occurs in the text. Align each information bit with the respective phrase from the original text where this information bit is coming from. Additionally, give each information bit an importance score from 1 to 10 based on the information bits importance within the overall text. Your output response should be formatted as JSON in the following way:

{{
    "information_bits": [
        {{
            "title": X,
            "alignment": Y,
            "importance": Z
        }}
    ]
}}

where X is the information bit, Y is the phrase from the original text that aligns the most with the text, and Z is the information bit's importance (1-10) within the text."""

SEGMENTATION_SYSTEM = """Split the transcript I give you into semantically distinct segments based on the content. Do not reword, reorder, drop, or add any words: the segments concatenated in order must reproduce the transcript exactly. Format your output as JSON: {{"segments": ["...", "..."]}}."""

TEMPLATE_NAMES = ("candidate", "edit_type", "importance", "information", "segmentation")


@dataclass(frozen=True)
class PromptTemplate:
    """A named system prompt with optional few-shot message pairs."""

    name: str
    system_text: str
    user_text: str = "{text}"
    few_shot: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    def render(self, **values) -> list[dict]:
        messages = [{"role": "system", "content": self.system_text.format(**values)}]
        for user, assistant in self.few_shot:
            messages.append({"role": "user", "content": user})
            messages.append({"role": "assistant", "content": assistant})
        messages.append({"role": "user", "content": self.user_text.format(**values)})
        return messages


TEMPLATES: dict[str, PromptTemplate] = {
    "candidate": PromptTemplate("candidate", CANDIDATE_SYSTEM, "{segment}"),
    "edit_type": PromptTemplate("edit_type", EDIT_TYPE_SYSTEM, EDIT_TYPE_USER),
    "importance": PromptTemplate("importance", IMPORTANCE_SYSTEM, IMPORTANCE_USER),
    "information": PromptTemplate("information", INFORMATION_SYSTEM, "{text}"),
    "segmentation": PromptTemplate("segmentation", SEGMENTATION_SYSTEM, "{text}"),
}
