"""
列挙結果のキャッシュ（SQLite）。
"""
