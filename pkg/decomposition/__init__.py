"""
局所整 ipo 半群の分解（正元の半束・整成分・準同型族）。
"""
