"""
設定（既定値・読み書き）とログ初期化。
"""
