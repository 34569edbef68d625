"""Standalone SVG class-distribution bar charts."""

from __future__ import annotations

import xml.etree.ElementTree as ET

from newscat.corpus import LabeledCorpus, class_distribution

_BAR_HEIGHT = 22
_BAR_GAP = 8
_LABEL_WIDTH = 220
_MAX_BAR_WIDTH = 420
_MARGIN = 16


def emit_class_chart(corpus: LabeledCorpus, path) -> None:
    """Write a horizontal bar chart, one bar per class, counts as text.

    Bar lengths are proportional to class counts; the output is
    well-formed standalone SVG.
    """
    rows = class_distribution(corpus)
    max_count = rows[0][1]
    height = _MARGIN * 2 + len(rows) * (_BAR_HEIGHT + _BAR_GAP)
    width = _MARGIN * 2 + _LABEL_WIDTH + _MAX_BAR_WIDTH + 60
    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(width),
        height=str(height),
        viewBox=f"0 0 {width} {height}",
    )
    for i, (name, count, _fraction) in enumerate(rows):
        y = _MARGIN + i * (_BAR_HEIGHT + _BAR_GAP)
        bar_w = round(_MAX_BAR_WIDTH * count / max_count)
        label = ET.SubElement(
            svg,
            "text",
            {
                "x": str(_MARGIN + _LABEL_WIDTH - 8),
                "y": str(y + _BAR_HEIGHT - 6),
                "text-anchor": "end",
                "font-family": "sans-serif",
                "font-size": "14",
            },
        )
        label.text = name
        ET.SubElement(
            svg,
            "rect",
            x=str(_MARGIN + _LABEL_WIDTH),
            y=str(y),
            width=str(max(bar_w, 1)),
            height=str(_BAR_HEIGHT),
            fill="#4878a8",
        )
        value = ET.SubElement(
            svg,
            "text",
            {
                "x": str(_MARGIN + _LABEL_WIDTH + max(bar_w, 1) + 6),
                "y": str(y + _BAR_HEIGHT - 6),
                "font-family": "sans-serif",
                "font-size": "14",
            },
        )
        value.text = str(count)
    ET.ElementTree(svg).write(path, encoding="unicode", xml_declaration=True)
