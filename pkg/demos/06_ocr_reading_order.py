"""From OCR word boxes to text in reading order.

OCR services return positioned words, not text. Words whose vertical
centers fall inside each other's boxes are clustered into lines, lines are
ordered top to bottom per page, and words left to right. The provenance map
records where every input word landed in the text.
"""

from qx import OcrWord, ocr_to_text

# A two-line exam fragment, given out of order, with one word ("substance")
# nudged upward by a third of its height: it must stay on its line.
words = [
    OcrWord("its", (74, 130, 92, 142)),
    OcrWord("Q.No.", (10, 100, 58, 112)),
    OcrWord("density.", (98, 130, 160, 142)),
    OcrWord("5", (64, 100, 72, 112)),
    OcrWord("substance", (172, 97, 250, 109)),
    OcrWord("a", (158, 100, 166, 112)),
    OcrWord("Express", (10, 130, 68, 142)),
    OcrWord("2.928g", (78, 100, 130, 112)),
    OcrWord("of", (136, 100, 152, 112)),
]

text, provenance = ocr_to_text(words)
print("linearized text:")
print(text)
print("\nprovenance (input order -> character range):")
for word, (start, end) in zip(words, provenance):
    print(f"  {word.text!r:12} -> [{start:3}, {end:3})  "
          f"{text[start:end]!r}")
