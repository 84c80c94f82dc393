"""
CLI・JSON 文書・DOT 出力。
"""
